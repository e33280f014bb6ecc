"""
Which K_r-minor-free graph has the largest spread?
==================================================

Enumerate every graph on a few vertices, discard those with a K_r minor,
and rank the rest by λ1 − λn.
"""

from minorspread import closed_form_extremal_spread, make_family, search_max_spread, spread

# For r = 3 the candidates are forests; the star wins with spread 2√(n−1).
for n in range(4, 8):
    report = search_max_spread(n, 3)
    print(f"r=3 n={n}: {report.survivors:4d} forests, best {report.maximizers} s={report.max_spread:.6f}")

# For r = 4 the winner is K2 joined to an independent set.
for n in range(5, 8):
    report = search_max_spread(n, 4)
    print(
        f"r=4 n={n}: best {report.maximizers} s={report.max_spread:.9f}"
        f"  closed form {closed_form_extremal_spread(4, n):.9f}"
    )

# The pattern is a large-n phenomenon. At r = n = 7 the join with a K5 side
# loses to K4 joined to three independent vertices.
report = search_max_spread(7, 7)
print("r=7 n=7 winner:", report.maximizers, f"s={report.max_spread:.6f}")
print("K5 v 2K1:      ", f"s={spread(make_family('join_star', r=7, n=7)).spread:.6f}")
print("rewire delta:  ", report.observations[0]["rewire_spread_delta"])
