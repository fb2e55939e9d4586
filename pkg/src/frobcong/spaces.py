"""Echelon bases of cusp-form spaces and finite-field linear algebra.

An echelon basis is a list of forms whose integer-grid leading exponents
strictly increase; expressing a series in such a basis is a greedy
elimination followed by a full residual scan, so failures come with the
first mismatching exponent.  Bases move between ZZ and GF(l) by reduction,
with leading coefficients required to stay units for normalization.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import ceil

from sympy import divisor_sigma

from .arith import dedekind_psi
from .eta import EtaQuotient
from .rings import ZZ, PrimeField
from .series import QExpansion, eta_power


class ExpressFailure(ValueError):
    """Raised when a series is not in the span of an echelon basis."""

    def __init__(self, first_mismatch, message=None):
        self.first_mismatch = first_mismatch
        num = first_mismatch
        pretty = f"q^{num // 24}" if num % 24 == 0 else f"q^({num}/24)"
        super().__init__(message or
                         f"not in the span: first mismatch at {pretty}")


def sturm_bound(k, N) -> int:
    """ceil((k/12) * N * prod_{p|N}(1 + 1/p)): comparing this many leading
    integer-exponent coefficients pins down equality in weight k, level N."""
    k = Fraction(k)
    if k < 0:
        raise ValueError("weight must be nonnegative")
    return ceil(k * dedekind_psi(N) / 12)


class EchelonBasis:
    """Forms with strictly increasing leading exponents (num units)."""

    def __init__(self, forms, level, weight, name=""):
        forms = list(forms)
        if any(f.is_zero() for f in forms):
            raise ValueError("echelon basis cannot contain a zero form")
        leads = [f.lead for f in forms]
        if any(b <= a for a, b in zip(leads, leads[1:])):
            raise ValueError("leading exponents must strictly increase")
        self.forms = forms
        self.level = int(level)
        self.weight = Fraction(weight)
        self.name = name
        self.leading = [(f.lead, f.lead_coeff()) for f in forms]

    def __len__(self):
        return len(self.forms)

    def __getitem__(self, i):
        return self.forms[i]

    def __iter__(self):
        return iter(self.forms)

    @property
    def ring(self):
        return self.forms[0].ring if self.forms else ZZ

    def prec(self):
        return min(f.prec for f in self.forms) if self.forms else 0

    def reduce_mod(self, ell, normalize=False):
        """Reduction mod ell; with normalize=True, scale each form so its
        leading coefficient is 1 (requires every leading coefficient to be
        a unit mod ell)."""
        out = []
        for f in self.forms:
            g = f.reduce_mod(ell)
            if g.is_zero() or g.lead != f.lead:
                raise ValueError(
                    f"leading coefficient at q^({f.lead}/24) dies mod {ell}")
            if normalize:
                g = g.scale(g.ring.inv(g.lead_coeff()))
            out.append(g)
        return EchelonBasis(out, self.level, self.weight,
                            name=f"{self.name} mod {ell}" if self.name else "")

    def __repr__(self):
        return (f"EchelonBasis({self.name or 'unnamed'}: {len(self.forms)} forms, "
                f"weight {self.weight}, level {self.level}, over {self.ring})")


# ---------------------------------------------------------------------------
# level-1 spaces


def eisenstein_qexp(w, prec_n):
    """E_4 or E_6 to q^(prec_n - 1) (integer grid, over ZZ)."""
    if w == 4:
        mult = 240
    elif w == 6:
        mult = -504
    else:
        raise ValueError("only weights 4 and 6 are provided")
    coeffs = {0: 1}
    for n in range(1, prec_n):
        coeffs[24 * n] = mult * int(divisor_sigma(n, w - 1))
    return QExpansion(ZZ, coeffs, 24 * prec_n)


def weight2_eisenstein(m, prec_n) -> QExpansion:
    """The weight-2 form (m-1) + 24*sum (sigma(n) - m*sigma(n/m)) q^n on
    level m, built from m*E_2(mz) - E_2(z)."""
    coeffs = {0: m - 1}
    for n in range(1, prec_n):
        c = int(divisor_sigma(n, 1))
        if n % m == 0:
            c -= m * int(divisor_sigma(n // m, 1))
        coeffs[24 * n] = 24 * c
    return QExpansion(ZZ, coeffs, 24 * prec_n)


def level1_dimension(k) -> int:
    """dim S_k(SL_2(Z)) for even k >= 0."""
    if k % 2 or k < 0:
        return 0
    if k < 12:
        return 0
    return k // 12 - (1 if k % 12 == 2 else 0)


def level1_basis(k, prec) -> EchelonBasis:
    """Integral echelon basis of S_k(1) from monomials Delta^j E4^a E6^b,
    fully row-reduced so that G_j = q^j + O(q^{d+1})."""
    if k % 2 or k < 0:
        raise ValueError("k must be a nonnegative even integer")
    d = level1_dimension(k)
    if d == 0:
        return EchelonBasis([], 1, k, name=f"S_{k}(1)")
    prec = max(prec, 24 * (d + 2))
    delta = eta_power(1, 24, prec + 24 * d)
    e4 = eisenstein_qexp(4, prec // 24 + d + 2)
    e6 = eisenstein_qexp(6, prec // 24 + d + 2)
    forms = []
    for j in range(1, d + 1):
        w = k - 12 * j
        if w % 4 == 0:
            a, b = w // 4, 0
        else:
            if w < 6:
                raise AssertionError("unreachable for j <= dim")
            a, b = (w - 6) // 4, 1
        f = delta ** j
        f = f * (e4 ** a) if a else f
        f = f * (e6 ** b) if b else f
        forms.append(f.truncate(prec))
    # integral row reduction: leading coefficients are 1 at q^j
    for i in range(d - 1, -1, -1):
        for j in range(i + 1, d):
            c = forms[i][24 * (j + 1)]
            if c:
                forms[i] = forms[i] - forms[j].scale(c)
    return EchelonBasis(forms, 1, k, name=f"S_{k}(1)")


# ---------------------------------------------------------------------------
# eta-quotient and product bases


def eta_basis_from_spec(quotients, prec, seed=None, seed_weight=0, level=None,
                        name="") -> EchelonBasis:
    """Expand each eta quotient (times the optional seed form) and verify
    the leading exponents are strictly increasing, i.e. the list really is
    echelon.  Collisions raise.  All quotients must share a weight; the
    basis weight is that common weight plus seed_weight."""
    if not quotients:
        raise ValueError("empty eta spec")
    weights = {quo.weight for quo in quotients}
    if len(weights) != 1:
        raise ValueError(f"mixed weights in eta spec: {sorted(weights)}")
    forms = []
    for quo in quotients:
        f = quo.expand(prec if seed is None else prec - (seed.lead or 0))
        if seed is not None:
            f = f * seed
            f = f.truncate(min(f.prec, prec))
        forms.append(f)
    leads = [f.lead for f in forms]
    if len(set(leads)) != len(leads) or leads != sorted(leads):
        raise ValueError(f"eta spec does not give an echelon list: leads {leads}")
    if level is None:
        level = 1
        for quo in quotients:
            level = max(level, quo.level)
    weight = weights.pop() + Fraction(seed_weight)
    return EchelonBasis(forms, level, weight, name=name)


def product_basis(E, H, k, target_count, level=1) -> EchelonBasis:
    """Forms of weight 2k with leading exponents 1..target_count, as
    products E^(k-j) * H_{i_1} ... H_{i_j} of the weight-2 Eisenstein
    series E = (m-1) + 24q + ... and an echelon list H_i = a_i q^i + ....

    Deterministic selection: to reach leading exponent n with g = len(H),
    write n = q*g + s (0 <= s < g); use H_g^q * H_s * E^(k-q-1) when s > 0
    and H_g^q * E^(k-q) when s = 0.  The leading coefficient is then
    (m-1)^(k-j) * prod a_i, recorded per form.
    """
    g = len(H)
    if g == 0:
        raise ValueError("H must be nonempty")
    for i, h in enumerate(H, start=1):
        if h.lead != 24 * i:
            raise ValueError(f"H_{i} must have leading exponent q^{i}")
    e0 = E[0]
    if E.ring.is_zero(e0):
        raise ValueError("E must have a nonzero constant term")
    forms = []
    for n in range(1, target_count + 1):
        q_, s = divmod(n, g)
        if s == 0:
            q_, s = q_ - 1, g
        j = q_ + 1  # H-factors used
        if k - j < 0:
            raise ValueError(
                f"cannot reach leading exponent {n}: needs {j} weight-2 factors "
                f"but k = {k} (require g*k >= target_count)")
        f = H[g - 1] ** q_ if q_ else None
        hs = H[s - 1]
        f = hs if f is None else f * hs
        for _ in range(k - j):
            f = f * E
        forms.append(f)
        if f.lead != 24 * n:
            raise AssertionError(f"product rule failed to hit q^{n}")
    return EchelonBasis(forms, level, 2 * k,
                        name=f"product basis weight {2 * k}")


def basis_weight12_level5(prec) -> EchelonBasis:
    """The five forms eta(z)^(24-6j) eta(5z)^(6j), j = 0..4, with leading
    exponents 1..5."""
    quots = [EtaQuotient({1: 24 - 6 * j, 5: 6 * j}, level=5) for j in range(5)]
    return eta_basis_from_spec(quots, prec, level=5, name="S_12(5) eta basis")


def basis_weight48_level13(prec) -> EchelonBasis:
    """The 55 forms eta(13z)^(2i-8) eta(z)^(104-2i), i = 1..55, with leading
    exponents 1..55."""
    quots = [EtaQuotient({13: 2 * i - 8, 1: 104 - 2 * i}, level=13)
             for i in range(1, 56)]
    return eta_basis_from_spec(quots, prec, level=13,
                               name="S_48(13) eta basis")


def basis_weight16_level13(h, prec) -> EchelonBasis:
    """The 16 forms eta(13z)^(2i-6) eta(z)^(30-2i) h, i = 1..16, built on a
    seed form h = q^2 + ... of weight 4 and level 13; leading exponents
    1..16."""
    if h.lead != 48:
        raise ValueError("seed form must have leading exponent q^2")
    quots = [EtaQuotient({13: 2 * i - 6, 1: 30 - 2 * i}, level=13)
             for i in range(1, 17)]
    return eta_basis_from_spec(quots, prec, seed=h, seed_weight=4, level=13,
                               name="S_16(13) eta-times-seed basis")


# ---------------------------------------------------------------------------
# stored basis data


def data_file(name, env_var="FROBCONG_DATA_DIR"):
    """Path of a bundled data file; the directory can be overridden via
    the FROBCONG_DATA_DIR environment variable."""
    base = os.environ.get(env_var)
    if not base:
        base = os.path.join(os.path.dirname(__file__), "data")
    return os.path.join(base, name)


def basis_weight4_level13(path=None) -> EchelonBasis:
    """The stored integral echelon basis G1, G2, G3 of the 3-dimensional
    space of weight-4 level-13 cusp forms.  The file is generated by
    tools/make_s4_13.py from harmonic theta series of a maximal quaternion
    order of discriminant 13 and revalidated structurally on load."""
    forms, level, weight, _ = load_basis_file(path or data_file("s4_13.basis"))
    if (level, weight, len(forms)) != (13, 4, 3):
        raise ValueError("s4_13.basis: expected 3 forms of weight 4, level 13")
    if [f.lead for f in forms] != [24, 48, 72]:
        raise ValueError("s4_13.basis: leading exponents must be q, q^2, q^3")
    return EchelonBasis(forms, 13, 4, name="S_4(13) stored basis")


def seed_h_weight4_level13(basis=None) -> QExpansion:
    """The weight-4 level-13 seed form h = q^2 - 3q^3 + q^4 + ..., i.e.
    G2 - 3*G3 in the stored echelon basis; the identifying expansion
    through q^4 is revalidated on every load."""
    if basis is None:
        basis = basis_weight4_level13()
    h = basis.forms[1] - basis.forms[2].scale(3)
    if [h.coeff_q(n) for n in (2, 3, 4)] != [1, -3, 1]:
        raise ValueError(
            "stored basis does not reproduce h = q^2 - 3q^3 + q^4 + ...")
    return h


# ---------------------------------------------------------------------------
# finite-field matrices


class FqMatrix:
    """Dense matrix over a finite field (PrimeField or ExtField)."""

    def __init__(self, field, rows):
        self.field = field
        self.rows = [[field.coerce(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    def copy(self):
        return FqMatrix(self.field, [list(r) for r in self.rows])

    def __eq__(self, other):
        return (isinstance(other, FqMatrix) and other.field == self.field
                and other.rows == self.rows)

    def __repr__(self):
        return f"FqMatrix({self.nrows}x{self.ncols} over {self.field})"


def rref_mod(M: FqMatrix):
    """Reduced row echelon form; returns (rref matrix, pivot column list).
    Deterministic: first nonzero entry in column order is the pivot."""
    F = M.field
    A = [list(r) for r in M.rows]
    nrows, ncols = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not F.is_zero(A[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        A[r], A[pivot_row] = A[pivot_row], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(x, inv) for x in A[r]]
        for i in range(nrows):
            if i != r and not F.is_zero(A[i][c]):
                coef = A[i][c]
                A[i] = [F.sub(x, F.mul(coef, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return FqMatrix(F, A), pivots


# ---------------------------------------------------------------------------
# expressing series in echelon bases


def express_in_basis(f: QExpansion, B: EchelonBasis, prec):
    """Coefficients c with f = sum c_i B_i to precision prec (num units).

    Greedy echelon elimination at the leading exponents, then a full
    residual scan below prec; raises ExpressFailure carrying the first
    mismatching exponent when f is not in the span.
    """
    if B.ring != f.ring:
        raise TypeError(f"basis over {B.ring}, series over {f.ring}")
    for g in B.forms:
        if g.prec < prec:
            raise ValueError("basis precision below requested verification range")
    if f.prec < prec:
        raise ValueError("series precision below requested verification range")
    ring = f.ring
    residual = f
    coeffs = []
    for g in B.forms:
        lead = g.lead
        if lead >= prec:
            coeffs.append(ring.zero)
            continue
        c = ring.mul(residual[lead], ring.inv(g.lead_coeff()))
        coeffs.append(c)
        if not ring.is_zero(c):
            residual = residual - g.scale(c)
    bad = [n for n in residual.coeffs if n < prec]
    if bad:
        raise ExpressFailure(min(bad))
    return coeffs


def try_express_in_basis(f, B, prec):
    """express_in_basis wrapped into (coeffs, None) / (None, first_mismatch)."""
    try:
        return express_in_basis(f, B, prec), None
    except ExpressFailure as exc:
        return None, exc.first_mismatch


# ---------------------------------------------------------------------------
# basis files


def save_basis_file(path, forms, level, weight, prec_n=None):
    """Text format: line 1 `N k count prec`, then one line of prec integers
    per form (coefficients of q^0 .. q^(prec-1))."""
    forms = list(forms)
    if prec_n is None:
        prec_n = min(f.prec // 24 for f in forms) if forms else 0
    lines = [f"{int(level)} {int(weight)} {len(forms)} {int(prec_n)}"]
    for f in forms:
        if any(n % 24 for n in f.coeffs):
            raise ValueError("basis files hold integer-exponent series only")
        if f.prec < 24 * prec_n:
            raise ValueError("form precision below file precision")
        lines.append(" ".join(str(f.coeff_q(n)) for n in range(prec_n)))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_basis_file(path, expect_echelon=True):
    """Returns (forms, level, weight, prec_n); validates counts and, by
    default, strictly increasing leading exponents."""
    with open(path) as fh:
        raw = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not raw:
        raise ValueError(f"{path}: empty basis file")
    head = raw[0].split()
    if len(head) != 4:
        raise ValueError(f"{path}: header must be 'N k count prec'")
    level, weight, count, prec_n = (int(x) for x in head)
    rows = raw[1:]
    if len(rows) != count:
        raise ValueError(f"{path}: expected {count} rows, found {len(rows)}")
    forms = []
    for idx, row in enumerate(rows):
        vals = [int(x) for x in row.split()]
        if len(vals) != prec_n:
            raise ValueError(f"{path}: row {idx + 1} has {len(vals)} of {prec_n} entries")
        forms.append(QExpansion.from_integer_coeffs(ZZ, vals, prec_n))
    if expect_echelon:
        leads = [f.lead for f in forms]
        if any(l is None for l in leads):
            raise ValueError(f"{path}: zero form in basis")
        if any(b <= a for a, b in zip(leads, leads[1:])):
            raise ValueError(f"{path}: leading exponents must strictly increase")
    return forms, level, weight, prec_n
