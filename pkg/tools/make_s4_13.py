"""Generate src/frobcong/data/s4_13.basis: the integral echelon basis
G1, G2, G3 of the 3-dimensional space of weight-4 level-13 cusp forms.

Route: harmonic theta series of a maximal order in the definite rational
quaternion algebra B = (-13, -7) ramified exactly at {13, infinity}.
With i^2 = -13, j^2 = -7, k = ij, the order

    O = Z<1, (1+j)/2, (i+k)/2, (j+k)/7>

has trace-form Gram determinant 169 = 13^2, i.e. reduced discriminant 13,
so it is maximal.  B has class number 1, hence Eichler's basis theorem
gives that the degree-2 harmonic theta series of the norm form of O span
all of S_4(Gamma_0(13)).

Every step is verified from independent inputs before the file is written:
  - ring closure of O and integrality of traces/norms (exact rationals);
  - Gram determinant 169 and positive definiteness;
  - the plain theta series equals the weight-2 Eisenstein series of level
    13 (coefficients 2(sigma(n) - 13 sigma(n/13))) for every n <= 200;
  - the nine degree-2 harmonic thetas have rank exactly 3 = dim S_4(13);
  - the monic echelon forms are integral with leads q, q^2, q^3;
  - T_2, T_3, T_5 map the span into itself exactly at all computed
    exponents (cusp-form spaces are Hecke stable, theta spans of a single
    lattice need not be unless they fill the space);
  - the combination G2 - 3*G3 starts q^2 - 3q^3 + q^4 + ...

Run from the repository root:  python3 tools/make_s4_13.py
"""

import math
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from frobcong.rings import ZZ
from frobcong.series import QExpansion
from frobcong.spaces import save_basis_file, weight2_eisenstein

PREC = 201          # coefficients of q^0 .. q^200
NMAX = PREC - 1


# --- quaternion arithmetic over Q in the basis (1, i, j, k) ---------------

def qmul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    # i^2 = -13, j^2 = -7, ij = k = -ji, ik = -13j, jk = 7i, k^2 = -91
    return (
        a0 * b0 - 13 * a1 * b1 - 7 * a2 * b2 - 91 * a3 * b3,
        a0 * b1 + a1 * b0 + 7 * (a2 * b3 - a3 * b2),
        a0 * b2 + a2 * b0 + 13 * (a3 * b1 - a1 * b3),
        a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
    )


def qconj(a):
    return (a[0], -a[1], -a[2], -a[3])


def qtrace(a):
    return 2 * a[0]


def qnorm(a):
    return a[0] ** 2 + 13 * a[1] ** 2 + 7 * a[2] ** 2 + 91 * a[3] ** 2


F = Fraction
ORDER_BASIS = (
    (F(1), F(0), F(0), F(0)),
    (F(1, 2), F(0), F(1, 2), F(0)),
    (F(0), F(1, 2), F(0), F(1, 2)),
    (F(0), F(0), F(1, 7), F(1, 7)),
)


def solve_in_basis(x):
    """Coordinates of quaternion x in ORDER_BASIS (exact Gaussian solve)."""
    rows = [list(e) + [x[c]] for c, e in
            zip(range(4), zip(*ORDER_BASIS))]  # 4 equations, one per 1/i/j/k
    n = 4
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col])
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        rows[col] = [v / pv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


def verify_order():
    for ei in ORDER_BASIS:
        assert qtrace(ei).denominator == 1, "non-integral trace"
        assert qnorm(ei).denominator == 1, "non-integral norm"
    for ei in ORDER_BASIS:
        for ej in ORDER_BASIS:
            coords = solve_in_basis(qmul(ei, ej))
            assert all(c.denominator == 1 for c in coords), (
                f"order not closed: {ei} * {ej} -> {coords}")
    gram = [[qtrace(qmul(ei, qconj(ej))) for ej in ORDER_BASIS]
            for ei in ORDER_BASIS]
    det = _det4(gram)
    assert det == 169, f"Gram determinant {det}, expected 13^2"
    return gram


def _det4(m):
    rows = [[F(v) for v in row] for row in m]
    det = F(1)
    for col in range(4):
        piv = next((r for r in range(col, 4) if rows[r][col]), None)
        assert piv is not None
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, 4):
            f = rows[r][col] * inv
            rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
    return det


# --- lattice enumeration ---------------------------------------------------

def enumerate_points(bound):
    """All integer coordinate vectors (a1,a2,a3,a4) with
    N(a1 + a2*e2 + a3*e3 + a4*e4) <= bound, via the exact square completion
    Q = (a1+a2/2)^2 + (7/4)(a2+2a4/7)^2 + (13/7)(a4+7a3/2)^2 + (13/4)a3^2."""
    pts = []
    b3 = int(math.isqrt(4 * bound // 13)) + 1
    for a3 in range(-b3, b3 + 1):
        r3 = bound - F(13, 4) * a3 * a3
        if r3 < 0:
            continue
        c4 = -F(7, 2) * a3
        w4 = math.sqrt(float(r3) * 7 / 13) + 1
        for a4 in range(math.ceil(float(c4) - w4), math.floor(float(c4) + w4) + 1):
            r4 = r3 - F(13, 7) * (a4 - c4) ** 2
            if r4 < 0:
                continue
            c2 = -F(2, 7) * a4
            w2 = math.sqrt(float(r4) * 4 / 7) + 1
            for a2 in range(math.ceil(float(c2) - w2), math.floor(float(c2) + w2) + 1):
                r2 = r4 - F(7, 4) * (a2 - c2) ** 2
                if r2 < 0:
                    continue
                c1 = -F(1, 2) * a2
                w1 = math.sqrt(float(r2)) + 1
                for a1 in range(math.ceil(float(c1) - w1), math.floor(float(c1) + w1) + 1):
                    # exact norm of a1*e1 + a2*e2 + a3*e3 + a4*e4
                    n = (a1 * a1 + a1 * a2 + 2 * a2 * a2 + 26 * a3 * a3
                         + a2 * a4 + 13 * a3 * a4 + 2 * a4 * a4)
                    if n <= bound:
                        pts.append((a1, a2, a3, a4, n))
    return pts


# --- harmonic theta series -------------------------------------------------

# Degree-2 polynomials harmonic for the Laplacian of the norm form
# x0^2 + 13 x1^2 + 7 x2^2 + 91 x3^2, evaluated on 14*(x0,x1,x2,x3), which
# is integral: X = (14a1 + 7a2, 7a3, 7a2 + 2a4, 7a3 + 2a4).

def harmonic_values(a1, a2, a3, a4):
    x0 = 14 * a1 + 7 * a2
    x1 = 7 * a3
    x2 = 7 * a2 + 2 * a4
    x3 = 7 * a3 + 2 * a4
    s0 = x0 * x0
    return (
        x0 * x1, x0 * x2, x0 * x3, x1 * x2, x1 * x3, x2 * x3,
        13 * x1 * x1 - s0, 7 * x2 * x2 - s0, 91 * x3 * x3 - s0,
    )


def build_thetas(points):
    plain = [0] * PREC
    harm = [[0] * PREC for _ in range(9)]
    for a1, a2, a3, a4, n in points:
        plain[n] += 1
        for t, v in enumerate(harmonic_values(a1, a2, a3, a4)):
            harm[t][n] += v
    return plain, harm


def verify_plain_theta(plain):
    """Theta of the norm form must be the level-13 weight-2 Eisenstein
    series: r(0) = 1, r(n) = 2(sigma(n) - 13 sigma(n/13))."""
    eis = weight2_eisenstein(13, PREC)
    assert plain[0] == 1
    for n in range(1, PREC):
        assert 12 * plain[n] == eis.coeff_q(n), (
            f"theta mismatch at n={n}: {plain[n]} vs {eis.coeff_q(n)}/12")


# --- echelonization over Q -------------------------------------------------

def rref_rational(rows):
    mat = [[F(v) for v in row] for row in rows]
    nrows, ncols = len(mat), len(mat[0])
    rank, pivots = 0, []
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(nrows):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return mat[:rank], pivots


def hecke_image(vals, p, k=4):
    """T_p on q-expansions: a(n) -> a(pn) + p^(k-1) a(n/p), valid here for
    p coprime to the level.  Returns values for n < len(vals)//p."""
    out = [0] * (len(vals) // p)
    for n in range(len(out)):
        c = vals[p * n]
        if n % p == 0:
            c += p ** (k - 1) * vals[n // p]
        out[n] = c
    return out


def verify_hecke_stability(gs):
    for p in (2, 3, 5):
        span_prec = PREC // p
        for g in gs:
            img = hecke_image(g, p)
            # solve for coordinates against leads 1, 2, 3 then check all n
            coef = [img[1], 0, 0]
            coef[1] = img[2] - coef[0] * gs[0][2]
            coef[2] = img[3] - coef[0] * gs[0][3] - coef[1] * gs[1][3]
            for n in range(span_prec):
                want = sum(c * gi[n] for c, gi in zip(coef, gs))
                assert img[n] == want, f"T_{p} instability at n={n}"


def main():
    verify_order()
    print("order verified: closed ring, Gram det 169 (maximal, disc 13)")

    points = enumerate_points(NMAX)
    print(f"enumerated {len(points)} lattice points of norm <= {NMAX}")
    plain, harm = build_thetas(points)

    units = plain[1]
    assert units == 2, f"unit count {units}, expected |O^x| = 2"
    verify_plain_theta(plain)
    print("plain theta matches the level-13 weight-2 Eisenstein series")

    reduced, pivots = rref_rational(harm)
    assert len(reduced) == 3, f"harmonic theta rank {len(reduced)}, expected 3"
    assert pivots == [1, 2, 3], f"pivot exponents {pivots}, expected [1,2,3]"

    gs = []
    for row in reduced:
        assert all(v.denominator == 1 for v in row), "non-integral echelon row"
        gs.append([int(v) for v in row])
    verify_hecke_stability(gs)
    print("echelon basis integral with leads q, q^2, q^3; T_2/T_3/T_5 stable")

    h = [b - 3 * c for b, c in zip(gs[1], gs[2])]
    assert h[:5] == [0, 0, 1, -3, 1], f"G2 - 3*G3 starts {h[:5]}"
    print("G2 - 3*G3 = q^2 - 3q^3 + q^4 + ... confirmed")
    print("  G1:", gs[0][1:9])
    print("  G2:", gs[1][2:9])
    print("  G3:", gs[2][3:9])

    forms = [QExpansion.from_integer_coeffs(ZZ, g, PREC) for g in gs]
    out = os.path.join(os.path.dirname(__file__), "..",
                       "src", "frobcong", "data", "s4_13.basis")
    save_basis_file(os.path.normpath(out), forms, 13, 4, PREC)
    print(f"wrote {os.path.normpath(out)} (3 forms, prec {PREC})")


if __name__ == "__main__":
    main()
