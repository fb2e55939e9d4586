"""Mod-ell Galois image audits on ingested newform data.

A weight ell-3 congruence survives the half-integral-weight machinery when
the residual representations attached to the newforms of the relevant
eigenspace are large (neither reducible, dihedral, nor exceptional).
Three elementary conditions on ell settle this for all but finitely many
pairs (ell, m); the leftovers are audited record by record from exact
coefficient data supplied in text files.  Nothing here computes newform
decompositions: exhaustiveness of a record set is an attested input, and
an audit that lacks data reports "unresolved" rather than guessing.

Extension-field coefficients (one table row lives in F_{19^3}) are carried
as polynomial vectors against an explicit modulus; a generator may be named
so that values can be read back in the power notation x^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import is_prime, kronecker, primes_upto
from .pipeline import hypothesis_holds, closed_form_applies
from .rings import ExtField, FFElement, GF

__all__ = [
    "InconsistentRecordError", "InsufficientDataError",
    "suitability_conditions", "exception_pairs",
    "epsilon_pair", "epsilon_space", "al_eigenvalue", "u_invariant",
    "exceptional_test",
    "dihedral_witness", "audit_suitability",
    "ModlReduction", "NewformRecord",
    "load_newform_records", "save_newform_records",
]


class InconsistentRecordError(ValueError):
    """Ingested data contradicts a structural constraint it must satisfy."""


class InsufficientDataError(ValueError):
    """A record lacks the coefficients an audit step needs."""


# -- conditions on ell alone -------------------------------------------------

def suitability_conditions(ell):
    """Evaluate the three sufficient conditions at ell; returns (c1, c2, c3).

    c1: 2^(ell-4) is not congruent to 2 or 2^(-1) mod ell (rules out
        reducible images).
    c2: ell-3 differs from (ell+1)/2 and (ell+3)/2 (rules out dihedral
        images without data).
    c3: (ell+1)/gcd(ell+1, ell-4) >= 6 and (ell-1)/gcd(ell-1, ell-4) >= 6
        (rules out exceptional images without data).
    """
    if ell < 5 or not is_prime(ell):
        raise ValueError("ell must be a prime >= 5")
    from math import gcd
    t = pow(2, ell - 4, ell)
    c1 = t != 2 % ell and t != pow(2, ell - 2, ell)
    c2 = (ell - 3) not in ((ell + 1) // 2, (ell + 3) // 2)
    c3 = ((ell + 1) // gcd(ell + 1, ell - 4) >= 6
          and (ell - 1) // gcd(ell - 1, ell - 4) >= 6)
    return c1, c2, c3


def exception_pairs(ell_max, m_max):
    """Pairs (ell, m) needing a data audit, over ell <= ell_max, m <= m_max.

    A pair qualifies when ell and m are distinct primes >= 5 satisfying the
    size hypothesis ell*ell_bar > m^2 or the small-m relaxation, some
    condition from suitability_conditions fails, and max(ell, m) >= 13 (when
    both primes are below 13 the congruence already follows from the linear
    family, so those pairs are never audited).
    """
    out = []
    for ell in primes_upto(ell_max):
        if ell < 5:
            continue
        c1, c2, c3 = suitability_conditions(ell)
        if c1 and c2 and c3:
            continue
        for m in primes_upto(m_max):
            if m < 5 or m == ell or max(ell, m) < 13:
                continue
            if hypothesis_holds(m, ell) or closed_form_applies(m, ell):
                out.append((ell, m))
    return out


# -- sign arithmetic ----------------------------------------------------------

def epsilon_pair(r, psi_modulus, p):
    """The sign -psi(p) * (4p/r) for p in {2, 3}.

    psi is the real character given by the Kronecker symbol at psi_modulus
    (use 1 for the trivial character).  r must be coprime to 6; it is
    negative in the intended use r = -m*ell.
    """
    if p not in (2, 3):
        raise ValueError("p must be 2 or 3")
    from math import gcd
    if gcd(r, 6) != 1:
        raise ValueError(f"r = {r} must be coprime to 6")
    return -kronecker(p, psi_modulus) * kronecker(4 * p, r)


def epsilon_space(ell, m):
    """Atkin-Lehner signs (eps_2, eps_3) of the audited eigenspace at 6m.

    These are epsilon_pair(-m*ell, m, p); a Kronecker-symbol exercise shows
    they equal -(8/ell) and -(12/ell).
    """
    return (epsilon_pair(-m * ell, m, 2), epsilon_pair(-m * ell, m, 3))


def al_eigenvalue(a_p, p, k):
    """Atkin-Lehner sign -p^(1-k/2) * a(p) for p exactly dividing the level.

    Requires p^(k/2-1) to divide a_p with quotient of absolute value 1;
    anything else means the record cannot be a newform eigenvalue at a
    prime exactly dividing its level.
    """
    if k < 2 or k % 2:
        raise ValueError("weight must be an even integer >= 2")
    pe = p ** (k // 2 - 1)
    if a_p % pe:
        raise InconsistentRecordError(
            f"a({p}) = {a_p} is not divisible by {p}^{k // 2 - 1}")
    s = -(a_p // pe)
    if s not in (1, -1):
        raise InconsistentRecordError(
            f"a({p}) = {a_p} has |a({p})| != {p}^{k // 2 - 1}")
    return s


# -- the exceptional-image invariant ------------------------------------------

def u_invariant(a_p, p, ell, weight=None):
    """u = a(p)^2 / p^(k-1) in the coefficient field mod ell, k = ell - 3.

    a_p may be an integer or an FFElement in an extension of F_ell.  The
    result only depends on a_p^2, so a sign choice in the input does not
    matter.  p must be invertible mod ell.
    """
    if weight is None:
        weight = ell - 3
    if p % ell == 0:
        raise ValueError(f"p = {p} is not invertible mod ell = {ell}")
    if isinstance(a_p, FFElement):
        fld = a_p.field
        pinv = fld.coerce(pow(p, -1, ell))
        return a_p * a_p * pinv ** (weight - 1)
    u = a_p * a_p * pow(p, -(weight - 1), ell)
    return u % ell


def exceptional_test(u, ell):
    """"witness" when u rules out an exceptional image, else "compatible".

    u is compatible with an exceptional image exactly when u is one of
    0, 1, 2, 4 or a root of x^2 - 3x + 1 in the field containing it.
    """
    if not isinstance(u, FFElement):
        u = u % ell
        if u in (0, 1, 2, 4) or (u * u - 3 * u + 1) % ell == 0:
            return "compatible"
        return "witness"
    if any(u == c for c in (0, 1, 2, 4)) or (u * u - 3 * u + 1).is_zero():
        return "compatible"
    return "witness"


def _quadratic_value(u, ell):
    if isinstance(u, FFElement):
        return u * u - 3 * u + 1
    return (u * u - 3 * u + 1) % ell


# -- ingested records ----------------------------------------------------------

@dataclass(frozen=True)
class ModlReduction:
    """Coefficients of one mod-ell reduction, in F_{ell^degree}.

    modulus is the monic defining polynomial (degree+1 entries, constant
    first); generator optionally names a multiplicative generator so values
    can be displayed as its powers.  coeffs maps p to a vector of length
    degree.
    """

    ell: int
    degree: int
    coeffs: dict
    modulus: tuple = ()
    generator: tuple = ()

    def field(self):
        if self.degree == 1:
            return GF(self.ell)
        if len(self.modulus) != self.degree + 1:
            raise InconsistentRecordError(
                f"degree {self.degree} reduction needs a monic modulus "
                f"with {self.degree + 1} coefficients")
        return ExtField(self.ell, self.modulus)

    def value(self, p):
        vec = self.coeffs.get(p)
        if vec is None:
            return None
        if self.degree == 1:
            return vec[0] % self.ell
        return self.field().element(list(vec))

    def display(self, v):
        """Power notation x^k against the named generator when possible."""
        if not isinstance(v, FFElement):
            return str(v % self.ell)
        if not self.generator:
            return repr(v)
        g = self.field().element(list(self.generator))
        acc = self.field().coerce(1)
        for e in range(self.ell ** self.degree - 1):
            if acc == v:
                return f"x^{e}"
            acc = acc * g
        return repr(v)


@dataclass(frozen=True)
class NewformRecord:
    """Exact data for one newform (or one mod-ell reduction of one).

    coeffs holds exact characteristic-zero data: integers, or tuples over
    the basis of the number field cut out by field_poly.  modl holds the
    finite-field reductions actually consumed by audits.
    """

    label: str
    level: int
    weight: int
    al_signs: dict = field(default_factory=dict)
    coeffs: dict = field(default_factory=dict)
    field_poly: tuple = ()
    modl: tuple = ()
    claims_complete: bool = False
    source: str = ""

    def reduction_for(self, ell):
        """The stored reduction mod ell, or one synthesized from integers."""
        for red in self.modl:
            if red.ell == ell:
                return red
        ints = {p: (v % ell,) for p, v in self.coeffs.items()
                if isinstance(v, int)}
        return ModlReduction(ell=ell, degree=1, coeffs=ints)

    def check_al_consistency(self):
        """Integer records with p || level must match the sign formula."""
        for p, s in sorted(self.al_signs.items()):
            a = self.coeffs.get(p)
            if not isinstance(a, int):
                continue
            if self.level % p == 0 and (self.level // p) % p != 0:
                if al_eigenvalue(a, p, self.weight) != s:
                    raise InconsistentRecordError(
                        f"{self.label}: stated sign at {p} contradicts a({p})")


# -- dihedral and full audits ---------------------------------------------------

def dihedral_witness(rec, ell, twist_modulus=None):
    """Least prime Q with (Q/twist_modulus) = -1 and a(Q) nonzero mod ell.

    A dihedral self-twist by the quadratic character at twist_modulus
    (default ell) forces a(Q) = 0 mod ell at every unramified nonresidue Q,
    so one nonzero value rules it out.  Returns None when every supplied
    nonresidue has a(Q) = 0; raises InsufficientDataError when the record
    supplies no usable Q at all.
    """
    tm = ell if twist_modulus is None else twist_modulus
    red = rec.reduction_for(ell)
    seen = False
    for q in sorted(red.coeffs):
        if not is_prime(q) or (rec.level * ell) % q == 0:
            continue
        if kronecker(q, tm) != -1:
            continue
        seen = True
        v = red.value(q)
        nonzero = not v.is_zero() if isinstance(v, FFElement) else v % ell != 0
        if nonzero:
            return q
    if not seen:
        raise InsufficientDataError(
            f"{rec.label}: no coefficients at nonresidue primes mod {tm}")
    return None


def audit_suitability(ell, m, records):
    """Audit the pair (ell, m) against ingested records; returns a report.

    Reducibility is ruled out only by condition c1.  Dihedral images are
    ruled out by c2, or per record by dihedral_witness.  Exceptional images
    are ruled out by c3, or per record by the least supplied prime whose
    u-invariant passes exceptional_test.  The verdict is "suitable" only
    when every route closes and, whenever records carried the burden, each
    record attests that the set is complete.
    """
    c1, c2, c3 = suitability_conditions(ell)
    eps2, eps3 = epsilon_space(ell, m)
    report = {
        "ell": ell, "m": m, "weight": ell - 3, "level": 6 * m,
        "epsilon": (eps2, eps3),
        "conditions": {"c1": c1, "c2": c2, "c3": c3},
        "records": [],
        "verdict": "suitable",
        "reasons": [],
    }

    if not c1:
        report["reasons"].append(
            "reducible images are not excluded (condition c1 fails)")
    data_needed = not (c2 and c3)
    if data_needed and not records:
        report["reasons"].append(
            "a condition fails and no records were supplied")

    for rec in records:
        rec.check_al_consistency()
        row = {"label": rec.label, "level": rec.level}
        red = rec.reduction_for(ell)

        if c2:
            row["dihedral"] = {"by": "condition"}
        else:
            try:
                q = dihedral_witness(rec, ell)
            except InsufficientDataError as exc:
                q = None
                row["dihedral"] = {"unresolved": str(exc)}
            if q is not None:
                row["dihedral"] = {"by": "witness", "Q": q}
            elif "dihedral" not in row:
                row["dihedral"] = {"unresolved":
                                   "all supplied nonresidues vanish"}

        if c3:
            row["exceptional"] = {"by": "condition"}
        else:
            row["exceptional"] = {"unresolved": "no witness among supplied p"}
            for p in sorted(red.coeffs):
                if not is_prime(p) or (6 * ell * m) % p == 0:
                    continue
                u = u_invariant(red.value(p), p, ell)
                if exceptional_test(u, ell) == "witness":
                    row["exceptional"] = {
                        "by": "witness", "p": p,
                        "u": red.display(u),
                        "quadratic": red.display(_quadratic_value(u, ell)),
                    }
                    break

        row["ok"] = ("unresolved" not in row["dihedral"]
                     and "unresolved" not in row["exceptional"])
        if not row["ok"]:
            report["reasons"].append(f"{rec.label}: not ruled out")
        report["records"].append(row)

    if data_needed and records and not all(r.claims_complete for r in records):
        report["reasons"].append(
            "records carry the burden but do not attest completeness")
    if report["reasons"]:
        report["verdict"] = "unresolved"
    return report


# -- record file format ----------------------------------------------------------
#
# Text, one record per block:
#
#   record <label>
#   level <N>
#   weight <k>
#   al <p> <+1|-1>
#   field <c0> ... <cn>          optional number-field defining polynomial
#   a <p> <integer>              exact integer coefficient
#   a <p> <v0> ... <v_{n-1}>     coefficient as a vector over the field basis
#   claims-complete <yes|no>
#   source <free text>
#   modl <ell> <d>
#   modulus <c0> ... <cd>        required when d > 1 (monic)
#   generator <v0> ... <v_{d-1}> optional
#   <p> <c0> ... <c_{d-1}>       one line per prime
#   <p> pow <e>                  generator-power notation, normalized on load
#   endmodl
#   end
#
# '#' starts a comment.  All values are exact integers.

def save_newform_records(path, records):
    lines = []
    for rec in records:
        lines.append(f"record {rec.label}")
        lines.append(f"level {rec.level}")
        lines.append(f"weight {rec.weight}")
        for p, s in sorted(rec.al_signs.items()):
            lines.append(f"al {p} {s:+d}")
        if rec.field_poly:
            lines.append("field " + " ".join(str(c) for c in rec.field_poly))
        for p, v in sorted(rec.coeffs.items()):
            if isinstance(v, int):
                lines.append(f"a {p} {v}")
            else:
                lines.append(f"a {p} " + " ".join(str(c) for c in v))
        lines.append(f"claims-complete {'yes' if rec.claims_complete else 'no'}")
        if rec.source:
            lines.append(f"source {rec.source}")
        for red in rec.modl:
            lines.append(f"modl {red.ell} {red.degree}")
            if red.modulus:
                lines.append("modulus " + " ".join(str(c) for c in red.modulus))
            if red.generator:
                lines.append("generator "
                             + " ".join(str(c) for c in red.generator))
            for p, vec in sorted(red.coeffs.items()):
                lines.append(f"{p} " + " ".join(str(c) for c in vec))
            lines.append("endmodl")
        lines.append("end")
        lines.append("")
    with open(path, "w") as fh:
        fh.write("\n".join(lines))


def _normalize_power(ext, generator, e):
    g = ext.element(list(generator))
    v = g ** e
    return tuple(v.vec)


def load_newform_records(path):
    records = []
    cur = None
    red = None
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            key = toks[0]
            try:
                if key == "record":
                    if cur is not None:
                        raise ValueError("nested record")
                    cur = {"label": toks[1], "al_signs": {}, "coeffs": {},
                           "modl": [], "claims_complete": False, "source": "",
                           "field_poly": ()}
                elif cur is None:
                    raise ValueError(f"'{key}' outside a record block")
                elif key == "level":
                    cur["level"] = int(toks[1])
                elif key == "weight":
                    cur["weight"] = int(toks[1])
                elif key == "al":
                    cur["al_signs"][int(toks[1])] = int(toks[2])
                elif key == "field":
                    cur["field_poly"] = tuple(int(t) for t in toks[1:])
                elif key == "a":
                    p = int(toks[1])
                    vals = [int(t) for t in toks[2:]]
                    cur["coeffs"][p] = vals[0] if len(vals) == 1 else tuple(vals)
                elif key == "claims-complete":
                    cur["claims_complete"] = toks[1] == "yes"
                elif key == "source":
                    cur["source"] = line.split(None, 1)[1]
                elif key == "modl":
                    red = {"ell": int(toks[1]), "degree": int(toks[2]),
                           "coeffs": {}, "modulus": (), "generator": ()}
                elif key == "modulus":
                    red["modulus"] = tuple(int(t) for t in toks[1:])
                elif key == "generator":
                    red["generator"] = tuple(int(t) for t in toks[1:])
                elif key == "endmodl":
                    cur["modl"].append(ModlReduction(**red))
                    red = None
                elif key == "end":
                    cur["modl"] = tuple(cur["modl"])
                    records.append(NewformRecord(**cur))
                    cur = None
                elif red is not None:
                    p = int(key)
                    if len(toks) >= 3 and toks[1] == "pow":
                        if red["degree"] == 1:
                            raise ValueError("power notation needs degree > 1")
                        ext = ExtField(red["ell"], red["modulus"])
                        if not red["generator"]:
                            raise ValueError("power notation needs a generator")
                        red["coeffs"][p] = _normalize_power(
                            ext, red["generator"], int(toks[2]))
                    else:
                        vec = tuple(int(t) for t in toks[1:])
                        if len(vec) != red["degree"]:
                            raise ValueError(
                                f"expected {red['degree']} entries, got {len(vec)}")
                        red["coeffs"][p] = vec
                else:
                    raise ValueError(f"unrecognized line '{line}'")
            except (IndexError, KeyError) as exc:
                raise ValueError(f"{path}:{lineno}: malformed line") from exc
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    if cur is not None:
        raise ValueError(f"{path}: unterminated record block")
    return records
