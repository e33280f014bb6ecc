"""
Clique minors with checkable witnesses
======================================

Every positive answer carries branch sets that a few lines of BFS can check.
"""

from minorspread import hadwiger_number, has_clique_minor, make_family, verify_certificate

petersen = make_family("petersen")
h, cert = hadwiger_number(petersen)
print("Hadwiger number of the Petersen graph:", h)
print("branch sets:", cert.branch_sets)
print("certificate checks out:", verify_certificate(petersen, cert))

# Six bags would need 15 cross edges, i.e. all of them, with singleton bags,
# which would make Petersen contain a triangle.
print("K6 minor:", has_clique_minor(petersen, 6)[0])

# Joins K_{r-2} ∨ (n-r+2)K1 sit right below the threshold.
for r in range(4, 8):
    g = make_family("join_star", r=r, n=10)
    print(f"r={r}: K_{r-1} minor {has_clique_minor(g, r - 1)[0]}, K_{r} minor {has_clique_minor(g, r)[0]}")
