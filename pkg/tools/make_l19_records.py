"""Generate the ell=19 newform record files under src/frobcong/data/.

The weight-16 eigenspaces at levels 30 and 78 with Atkin-Lehner signs
(+1, +1) at 2 and 3 contain: the unique level-6 newform f0, two rational
newforms at level 30 split by the sign of a(5) = +-5^7, and two Galois
orbits at level 78 whose a(5) satisfies a known cubic resp. quartic.

Everything in the emitted records is either forced (bad-prime eigenvalues
have |a(p)| = p^(k/2-1), and the mod-19 residue picks the sign) or derived
here from the defining polynomials: the cubic is irreducible mod 19 so its
orbit contributes one F_{19^3} reduction, the quartic splits completely so
its orbit contributes four F_19 reductions whose a(5) are the roots.
Witness coefficients a(p) that are only constrained through the square
a(p)^2 are recorded as the smaller square root; every consumer in the
package depends on a(p)^2 only.

Run from the repository root:  python3 tools/make_l19_records.py
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from frobcong.rings import ExtField, poly_is_irreducible
from frobcong.suitability import (
    ModlReduction, NewformRecord, al_eigenvalue, epsilon_space,
    load_newform_records, save_newform_records, u_invariant,
    exceptional_test, audit_suitability,
)

ELL = 19
ORDER = ELL ** 3 - 1

CUBIC = (2064376814439600, -14396407620, -150844, 1)
QUARTIC = (874069880070911440000, 4905613268788000, -64062939000, -169580, 1)


def sqrt_mod(a, ell):
    a %= ell
    for r in range((ell + 1) // 2):
        if r * r % ell == a:
            return r
    raise ValueError(f"{a} is not a square mod {ell}")


def lift_witness(u, p, ell, k=ELL - 3):
    """The smaller root of a(p)^2 = u * p^(k-1) mod ell."""
    return sqrt_mod(u * pow(p, k - 1, ell), ell)


def derive_cubic_reduction():
    """Modulus, generator, and coefficient lines for the F_{19^3} record."""
    cr = tuple(c % ELL for c in CUBIC)
    assert poly_is_irreducible(cr, ELL), "cubic must stay irreducible mod 19"
    E = ExtField(ELL, cr)
    a = E.gen()

    # one generator g of the cyclic group, then solve x^3508 = a for x
    g = None
    for c2 in range(ELL):
        for c1 in range(ELL):
            for c0 in range(ELL):
                if c1 == c2 == 0:
                    continue
                cand = E.element([c0, c1, c2])
                if cand.multiplicative_order() == ORDER:
                    g = cand
                    break
            if g is not None:
                break
        if g is not None:
            break
    dlog = {}
    acc = E.coerce(1)
    for e in range(ORDER):
        dlog[tuple(acc.vec)] = e
        acc = acc * g
    da = dlog[tuple(a.vec)]
    from math import gcd
    d = gcd(3508, ORDER)
    assert da % d == 0, "a(5) must be a 3508th power"
    m0 = ORDER // d
    e0 = (da // d) * pow(3508 // d, -1, m0) % m0
    xs = [g ** ((e0 + i * m0) % ORDER) for i in range(d)]
    xs = [x for x in xs if x.multiplicative_order() == ORDER]
    assert len(xs) == 1, f"expected a unique generator, got {len(xs)}"
    x = xs[0]
    assert x ** 3508 == a

    # confirm the u-invariant lands on the advertised powers of x
    ie = pow(dlog[tuple(x.vec)], -1, ORDER)
    u = u_invariant(a, 5, ELL)
    quad = u * u - 3 * u + 1
    pow_u = dlog[tuple(u.vec)] * ie % ORDER
    pow_q = dlog[tuple(quad.vec)] * ie % ORDER
    assert (pow_u, pow_q) == (4730, 1158), (pow_u, pow_q)

    return ModlReduction(
        ell=ELL, degree=3, modulus=cr, generator=tuple(x.vec),
        coeffs={2: (pow(-128, 1, ELL), 0, 0),
                3: (pow(-2187, 1, ELL), 0, 0),
                5: tuple(a.vec)})


def quartic_roots():
    roots = [t for t in range(ELL)
             if sum(c * pow(t, i, ELL) for i, c in enumerate(QUARTIC)) % ELL == 0]
    assert sorted(roots) == [4, 10, 13, 16], roots
    return roots


def main():
    outdir = os.path.join(os.path.dirname(__file__), "..", "src",
                          "frobcong", "data")
    os.makedirs(outdir, exist_ok=True)

    k = 16
    assert al_eigenvalue(-128, 2, k) == 1 and al_eigenvalue(-2187, 3, k) == 1
    assert epsilon_space(ELL, 5) == (1, 1) and epsilon_space(ELL, 13) == (1, 1)
    # the displayed residues force the signs of the bad-prime eigenvalues
    assert -128 % ELL == 5 and 128 % ELL != 5
    assert -2187 % ELL == 17 and 2187 % ELL != 17
    assert (-128) ** 2 % ELL == 6   # a(4) = a(2)^2 at a bad prime

    src = ("record set for the weight-16 (+1,+1) eigenspace; bad-prime "
           "eigenvalues forced by |a(p)| = p^7 and the mod-19 residue; "
           "witness coefficients recorded up to sign (consumers use a(p)^2)")

    f0 = NewformRecord(
        label="f0_level6", level=6, weight=k,
        al_signs={2: 1, 3: 1}, coeffs={2: -128, 3: -2187},
        modl=(ModlReduction(ell=ELL, degree=1,
                            coeffs={2: (5,), 3: (17,), 5: (17,),
                                    11: (lift_witness(5, 11, ELL),)}),),
        claims_complete=True, source=src)

    # level 30: a(5) = +-5^7 splits the pair; witness rows (23, u=7), (11, u=5)
    f1_30 = NewformRecord(
        label="f1_level30", level=30, weight=k,
        al_signs={2: 1, 3: 1, 5: -1},
        coeffs={2: -128, 3: -2187, 5: 78125},
        modl=(ModlReduction(ell=ELL, degree=1,
                            coeffs={2: (5,), 3: (17,),
                                    23: (lift_witness(7, 23, ELL),)}),),
        claims_complete=True, source=src)
    f2_30 = NewformRecord(
        label="f2_level30", level=30, weight=k,
        al_signs={2: 1, 3: 1, 5: 1},
        coeffs={2: -128, 3: -2187, 5: -78125},
        modl=(ModlReduction(ell=ELL, degree=1,
                            coeffs={2: (5,), 3: (17,),
                                    11: (lift_witness(5, 11, ELL),)}),),
        claims_complete=True, source=src)

    save_newform_records(os.path.join(outdir, "newforms_l19_m5.nf"),
                         [f0, f1_30, f2_30])

    # level 78, cubic orbit: one F_{19^3} reduction
    f1_78 = NewformRecord(
        label="f1_level78_cubic", level=78, weight=k,
        al_signs={2: 1, 3: 1},
        coeffs={2: -128, 3: -2187, 5: (0, 1, 0)},
        field_poly=CUBIC,
        modl=(derive_cubic_reduction(),),
        claims_complete=True, source=src)

    # level 78, quartic orbit: four F_19 reductions, a(5) = the four roots
    roots = quartic_roots()
    witness7 = {16: lift_witness(11, 7, ELL), 13: lift_witness(7, 7, ELL)}
    quartic_recs = []
    for i, r in enumerate([16, 13, 10, 4], start=2):
        assert r in roots
        coeffs = {2: (5,), 3: (17,), 5: (r,)}
        if r in witness7:
            coeffs[7] = (witness7[r],)
        quartic_recs.append(NewformRecord(
            label=f"f{i}_level78_quartic", level=78, weight=k,
            al_signs={2: 1, 3: 1},
            coeffs={2: -128, 3: -2187, 5: (0, 1, 0, 0)},
            field_poly=QUARTIC,
            modl=(ModlReduction(ell=ELL, degree=1, coeffs=coeffs),),
            claims_complete=True, source=src))

    save_newform_records(os.path.join(outdir, "newforms_l19_m13.nf"),
                         [f0, f1_78] + quartic_recs)

    # round-trip and audit sanity before declaring success
    for name, m, expect in (("newforms_l19_m5.nf", 5,
                             {"f0_level6": (11, "5", "11"),
                              "f1_level30": (23, "7", "10"),
                              "f2_level30": (11, "5", "11")}),
                            ("newforms_l19_m13.nf", 13,
                             {"f0_level6": (11, "5", "11"),
                              "f1_level78_cubic": (5, "x^4730", "x^1158"),
                              "f2_level78_quartic": (7, "11", "13"),
                              "f3_level78_quartic": (7, "7", "10"),
                              "f4_level78_quartic": (5, "17", "11"),
                              "f5_level78_quartic": (5, "5", "11")})):
        recs = load_newform_records(os.path.join(outdir, name))
        rep = audit_suitability(ELL, m, recs)
        assert rep["verdict"] == "suitable", rep["reasons"]
        for row in rep["records"]:
            exc = row["exceptional"]
            want = expect[row["label"]]
            got = (exc.get("p"), exc.get("u"), exc.get("quadratic"))
            assert got == want, (row["label"], got, want)
        print(f"{name}: audit (ell=19, m={m}) suitable; "
              f"{len(recs)} records, all witness rows as expected")


if __name__ == "__main__":
    main()
