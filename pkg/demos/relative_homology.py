"""Relative homology of q₊/p₊ for sl(4) and the Künneth comparison.

Run with ``python3 demos/relative_homology.py``.
"""

from relbgg.homology import complex_for, homology, kostant_eigenvalue_check, kostant_predict, kunneth_compare
from relbgg.parabolic import build_pair
from relbgg.rootdata import weight


def show(pair, lam):
    cx = complex_for(pair, lam)
    h = homology(cx)
    print(f"{pair}  coefficient {lam.dynkin(pair.crossed_p)}")
    for k, summands in enumerate(h.degrees):
        names = ", ".join(s.weight.dynkin(pair.crossed_q) for s in summands)
        print(f"  H_{k}: {names}")
    predicted = kostant_predict(pair, lam)
    print("  matches the Hasse diagram prediction:", [h.weights(k) for k in range(len(predicted))] == predicted)
    rep = kostant_eigenvalue_check(cx)
    if rep.kappa is None:
        print("  box vanishes identically, so every summand is harmonic")
    else:
        print(f"  box eigenvalues fit 2*box = kappa*(c(lam) - c(mu)) with kappa = {rep.kappa}: {rep.consistent}")


pair = build_pair(3, (1,), (1, 2))
for lam in [(0, 0, 0), (1, 1, 1), ("1/2", 1, 2)]:
    show(pair, weight(*lam))
    print()

# Homology for the big pair equals the combination of the two smaller ones.
for lam in [(0, 0, 0), (1, 0, 1)]:
    res = kunneth_compare(3, (1,), (1, 2), weight(*lam))
    print(f"Kunneth for {lam}: {'equal' if res['equal'] else 'different'}")
