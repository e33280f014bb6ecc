"""
Extreme eigenvalues of H ∨ mK1
==============================

The extreme eigenvalues of a join solve a scalar secular equation. Expanding
it in 1/λ gives spread ≈ 2γ + 2c2/γ with an O(γ^-3) remainder.
"""

from minorspread import (
    JoinModel,
    complete,
    make_family,
    second_order_spread,
    secular_extremes,
    series_coefficients,
    truncated_series_extremes,
)

H = complete(2)
print("c1, c2 for K2:", series_coefficients(JoinModel(H, 1)))

print(f"{'n':>5} {'exact':>14} {'2nd order':>14} {'err*gamma^3':>12}")
for n in (20, 50, 100, 200, 500):
    model = JoinModel(H, n - 2)
    l1, ln = secular_extremes(model)
    approx = second_order_spread(model)
    print(f"{n:5d} {l1 - ln:14.9f} {approx:14.9f} {abs(l1 - ln - approx) * model.gamma**3:12.6f}")

# Higher truncation orders close in on the secular root.
model = JoinModel(H, 48)
exact = secular_extremes(model)[0]
for K in (0, 2, 4, 8):
    print(f"K={K}: |λ1(series) − λ1| = {abs(truncated_series_extremes(model, K)[0] - exact):.2e}")

# The smallest eigenvalue need not come from the secular equation.
k33 = JoinModel(make_family("complete_bipartite", a=3, b=3), 1)
print("λn of K3,3 ∨ K1:", secular_extremes(k33)[1])
