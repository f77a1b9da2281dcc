"""Print the relative BGG sequences of five-dimensional path geometries.

For a small range of (w, k, l) the closed-form weights are compared with the
homology engine, and each case is sorted into one of the four pieces of a
standard BGG sequence.
"""

from fractions import Fraction

from relbgg import pathgeom as pg

print(f"{'w':>5} {'k':>2} {'l':>2}  {'W0':<14}{'W1':<14}{'W2':<16}{'class':<8} walls  engine")
for w in (-4, -2, -1, 0, Fraction(1, 2)):
    for k in range(2):
        for l in range(2):
            case = pg.PathGeomCase(w, k, l)
            seq = pg.path_sequence(case)
            _, walls = pg.singular_character(case)
            ok = pg.validate_against_engine(case).ok
            b = [str(x) for x in seq.bundles]
            print(f"{str(w):>5} {k:>2} {l:>2}  {b[0]:<14}{b[1]:<14}{b[2]:<16}"
                  f"{pg.classify_subsequence(case):<8} {walls or '-'}  {'ok' if ok else 'MISMATCH'}")

case = pg.PathGeomCase(2, 0, 1)
tb = pg.tensor_bundle(case)
print()
print(f"kernel of the first operator for w=2, k=0, l=1: {tb.label} = {tb.plain}")
