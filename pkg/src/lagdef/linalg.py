"""Exact linear algebra over Q and Q(i).

Vectors are sparse dicts {column: coefficient}; matrices used by the
per-degree pipeline are lists of such dicts.  Everything is fraction
arithmetic, no floating point except for root *localization*, which is
always verified exactly afterwards.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import GaussianRational


def vec_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        if s is None:
            out[k] = v
        else:
            s = s + v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def vec_scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def vec_axpy(a: dict, c, b: dict) -> dict:
    """a + c*b."""
    if not c:
        return dict(a)
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        cv = c * v
        if s is None:
            out[k] = cv
        else:
            s = s + cv
            if s:
                out[k] = s
            else:
                del out[k]
    return out


class Echelon:
    """Incremental row echelon form of sparse vectors.

    Rows are normalized so the pivot coefficient is 1; pivots are chosen
    as the smallest column index present.  Supports reduction of new
    vectors against the current span and rank queries.
    """

    def __init__(self):
        self.rows: dict = {}  # pivot column -> normalized sparse row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Fully reduce vec modulo the span; returns the residual."""
        v = dict(vec)
        while v:
            # reduce greedily at the smallest reducible column
            hit = None
            for c in v:
                if c in self.rows:
                    hit = c
                    break
            if hit is None:
                # no single pass guarantee with dict order; do a full scan
                cols = [c for c in v if c in self.rows]
                if not cols:
                    return v
                hit = min(cols)
            coeff = v[hit]
            row = self.rows[hit]
            v = vec_axpy(v, -coeff, row)
        return v

    def add(self, vec: dict) -> dict | None:
        """Insert vec; returns the normalized new row or None if dependent."""
        r = self.reduce(vec)
        if not r:
            return None
        piv = min(r)
        inv = _invert(r[piv])
        row = {k: v * inv for k, v in r.items()}
        self.rows[piv] = row
        # keep reduced form: eliminate the new pivot from existing rows
        for p, existing in list(self.rows.items()):
            if p == piv:
                continue
            c = existing.get(piv)
            if c:
                self.rows[p] = vec_axpy(existing, -c, row)
        return row

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def pivot_columns(self) -> set:
        return set(self.rows)


def _invert(c):
    if isinstance(c, GaussianRational):
        return 1 / c
    return Fraction(1) / c


class AugmentedEchelon:
    """Echelon form that remembers how each row was built from the inputs.

    Used to express reduced vectors as combinations of chosen basis
    vectors (quotient coordinates) and to extract kernels.
    """

    def __init__(self):
        self.rows: dict = {}  # pivot -> (row, combo) with combo sparse over input idx

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict, combo: dict | None = None):
        v = dict(vec)
        comb = dict(combo) if combo else {}
        while True:
            cols = [c for c in v if c in self.rows]
            if not cols:
                return v, comb
            hit = min(cols)
            coeff = v[hit]
            row, rcombo = self.rows[hit]
            v = vec_axpy(v, -coeff, row)
            comb = vec_axpy(comb, -coeff, rcombo)

    def add(self, vec: dict, tag) -> bool:
        """Insert vec tagged by input index; True when rank grew."""
        v, comb = self.reduce(vec, {tag: _one_like(vec)})
        if not v:
            return False
        piv = min(v)
        inv = _invert(v[piv])
        self.rows[piv] = ({k: c * inv for k, c in v.items()}, {k: c * inv for k, c in comb.items()})
        return True


def _one_like(vec: dict):
    for v in vec.values():
        if isinstance(v, GaussianRational):
            return GaussianRational(1)
        return Fraction(1)
    return Fraction(1)


def kernel_of_columns(columns: list) -> list:
    """Kernel of the linear map sending e_j to columns[j] (sparse dicts).

    Returns a list of sparse coefficient dicts {j: c} spanning the kernel.
    """
    ech = AugmentedEchelon()
    kernel = []
    for j, col in enumerate(columns):
        v, comb = ech.reduce(col, {j: _one_like(col) if col else Fraction(1)})
        if not v:
            if not comb:
                comb = {j: Fraction(1)}
            kernel.append(comb)
        else:
            piv = min(v)
            inv = _invert(v[piv])
            ech.rows[piv] = (
                {k: c * inv for k, c in v.items()},
                {k: c * inv for k, c in comb.items()},
            )
    return kernel


def rank_of_rows(rows: list) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


class Subquotient:
    """A quotient V/W of spans of sparse vectors in a common ambient space.

    Chooses basis representatives for the quotient and provides exact
    coordinates of arbitrary vectors of V modulo W.
    """

    def __init__(self, numerator: list, denominator: list):
        self.denom = Echelon()
        for v in denominator:
            self.denom.add(v)
        self.basis = []  # representatives (sparse vecs in ambient coords)
        self.coords_ech = AugmentedEchelon()
        for v in numerator:
            r = self.denom.reduce(v)
            if self.coords_ech.add(r, len(self.basis)):
                self.basis.append(v)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, vec: dict) -> dict:
        """Coordinates of vec in the chosen quotient basis."""
        r = self.denom.reduce(vec)
        v, comb = self.coords_ech.reduce(r)
        if v:
            raise ValueError("vector does not lie in the subquotient's numerator")
        return {k: -c for k, c in comb.items()}


# -- dense utilities (small matrices) ---------------------------------------


def mat_mul(a: list, b: list) -> list:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = ai[0] * b[0][j]
            for l in range(1, k):
                s = s + ai[l] * b[l][j]
            row.append(s)
        out.append(row)
    return out


def identity(n, one=Fraction(1)):
    return [[one if i == j else one * 0 for j in range(n)] for i in range(n)]


def charpoly(a: list) -> list:
    """Characteristic polynomial det(xI - A) by the Berkowitz method.

    Division-free, so it works verbatim over Q and Q(i).  Returns
    coefficients [c_0, ..., c_n] with c_n = 1, p(x) = sum c_k x^k.
    """
    n = len(a)
    if n == 0:
        return [_poly_one_coeff(a)]
    one = _poly_one_coeff(a)
    zero = one * 0
    # Berkowitz: iteratively build the coefficient vector.
    # vec holds the charpoly coefficients of the leading principal minor,
    # highest degree first.
    vec = [one, -a[0][0]]
    for k in range(1, n):
        # Toeplitz column entries: 1, -a_kk, -(R * S-powers * C)
        akk = a[k][k]
        row = [a[k][j] for j in range(k)]  # R
        col = [a[j][k] for j in range(k)]  # C
        sub = [[a[i][j] for j in range(k)] for i in range(k)]  # S
        entries = [one, -akk]
        cur = col[:]
        for _ in range(k):
            s = zero
            for l in range(k):
                s = s + row[l] * cur[l]
            entries.append(-s)
            nxt = [zero] * k
            for i in range(k):
                si = sub[i]
                acc = zero
                for j in range(k):
                    acc = acc + si[j] * cur[j]
                nxt[i] = acc
            cur = nxt
        new = [zero] * (k + 2)
        for i, e in enumerate(entries):
            if not e:
                continue
            for j, v in enumerate(vec):
                if i + j <= k + 1:
                    new[i + j] = new[i + j] + e * v
        vec = new
    vec.reverse()  # ascending order c_0..c_n
    return vec


def _poly_one_coeff(a):
    for row in a:
        for v in row:
            if isinstance(v, GaussianRational):
                return GaussianRational(1)
            return Fraction(1)
    return Fraction(1)


# -- univariate polynomial helpers over the field --------------------------


def poly_degree(p: list) -> int:
    d = len(p) - 1
    while d >= 0 and not p[d]:
        d -= 1
    return d


def poly_trim(p: list) -> list:
    d = poly_degree(p)
    return p[: d + 1] if d >= 0 else []


def poly_eval(p: list, x):
    acc = None
    for c in reversed(poly_trim(p)):
        acc = c if acc is None else acc * x + c
    return acc if acc is not None else Fraction(0)


def poly_divmod(p: list, q: list):
    p = poly_trim(p)
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    dq = len(q) - 1
    inv = _invert(q[-1])
    rem = p[:]
    quo = [q[-1] * 0] * max(0, len(p) - dq)
    while len(rem) - 1 >= dq and poly_trim(rem):
        rem = poly_trim(rem)
        if len(rem) - 1 < dq:
            break
        shift = len(rem) - 1 - dq
        c = rem[-1] * inv
        quo[shift] = c
        for i, qc in enumerate(q):
            rem[shift + i] = rem[shift + i] - c * qc
        rem = rem[:-1]
    return poly_trim(quo), poly_trim(rem)


def poly_gcd(p: list, q: list) -> list:
    p, q = poly_trim(p), poly_trim(q)
    while q:
        _, r = poly_divmod(p, q)
        p, q = q, r
    if p:
        inv = _invert(p[-1])
        p = [c * inv for c in p]
    return p


def poly_derivative(p: list) -> list:
    return poly_trim([c * k for k, c in enumerate(p)][1:])


def squarefree_part(p: list) -> list:
    g = poly_gcd(p, poly_derivative(p))
    if poly_degree(g) <= 0:
        return poly_trim(p)
    q, r = poly_divmod(p, g)
    assert not r
    return q


def _complex_roots(p: list) -> list:
    """Durand-Kerner localization of the roots of a squarefree polynomial."""
    coeffs = [complex(c) for c in poly_trim(p)]
    n = len(coeffs) - 1
    if n <= 0:
        return []
    lead = coeffs[-1]
    coeffs = [c / lead for c in coeffs]

    def ev(z):
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    # standard starting configuration on a slightly irrational spiral
    roots = [(0.4 + 0.9j) ** k for k in range(1, n + 1)]
    for _ in range(600):
        shift = 0.0
        new = []
        for i, r in enumerate(roots):
            denom = 1.0 + 0j
            for j, s in enumerate(roots):
                if i != j:
                    denom *= r - s
            if denom == 0:
                denom = 1e-30
            delta = ev(r) / denom
            new.append(r - delta)
            shift = max(shift, abs(delta))
        roots = new
        if shift < 1e-14:
            break
    return roots


def _root_candidates(p: list, gaussian: bool) -> list:
    sf = squarefree_part(p)
    approx = _complex_roots(sf)
    candidates = []
    seen = set()
    for z in approx:
        for denbound in (24, 240, 5040, 10 ** 6):
            re = Fraction(z.real).limit_denominator(denbound)
            im = Fraction(z.imag).limit_denominator(denbound)
            if gaussian:
                cand = GaussianRational(re, im)
            else:
                if abs(z.imag) > 1e-7:
                    continue
                cand = re
            key = str(cand)
            if key in seen:
                continue
            if not poly_eval(p, cand):
                seen.add(key)
                candidates.append(cand)
                break
    return candidates


def rational_eigenvalues(p: list, gaussian: bool = False):
    """Split p into exact linear factors over Q (or Q(i)) plus a remainder.

    Returns (roots, remainder) where roots is a list of (root, multiplicity)
    with exact field elements verified by exact evaluation, and remainder is
    the unfactored cofactor.  The numeric localization is repeated on the
    deflated remainder until it stops finding verified roots, which keeps
    tight clusters of high-degree determinants from being missed.
    """
    p = poly_trim(p)
    if poly_degree(p) <= 0:
        return [], p
    found: dict = {}
    order: list = []
    rem = p
    while poly_degree(rem) > 0:
        candidates = _root_candidates(rem, gaussian)
        progressed = False
        for cand in candidates:
            mult = 0
            while True:
                q, r = poly_divmod(rem, [-cand, _one_coeff(rem)])
                if poly_trim(r):
                    break
                rem = q
                mult += 1
            if mult:
                key = str(cand)
                if key not in found:
                    found[key] = [cand, 0]
                    order.append(key)
                found[key][1] += mult
                progressed = True
        if not progressed:
            break
    roots = [(found[k][0], found[k][1]) for k in order]
    return roots, poly_trim(rem)


def _one_coeff(p):
    for c in p:
        if isinstance(c, GaussianRational):
            return GaussianRational(1)
        return Fraction(1)
    return Fraction(1)


def integer_roots_in_range(p: list, lo: int, hi: int) -> list:
    """Integers k in [lo, hi] with p(k) = 0, checked exactly."""
    out = []
    for k in range(lo, hi + 1):
        if not poly_eval(p, Fraction(k)):
            out.append(k)
    return out
