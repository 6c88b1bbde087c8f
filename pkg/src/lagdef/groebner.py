"""Groebner bases over Q and Q(i): Buchberger with the normal selection
strategy, division with certificates, syzygies, elimination, saturation,
Krull dimension and graded quotient bases.

Exact arithmetic throughout; no modular tricks.  Scales are desk-size
(few variables, moderate degrees), which keeps the classical algorithms
adequate.
"""

from __future__ import annotations

import time
from fractions import Fraction
from itertools import combinations

from .fields import GaussianRational
from .orders import BlockElimination, MonomialOrder, WGrevLex
from .ring import (
    Polynomial,
    RingError,
    WeightedRing,
    monomial_div,
    monomial_divides,
    monomial_lcm,
)


def default_order(ring: WeightedRing) -> MonomialOrder:
    return WGrevLex(ring.weights)


class ResourceBoundExceeded(RuntimeError):
    """Raised when a basis computation overruns its deadline."""


class Certificate:
    """Exact division data: p = sum_j quotients[j] * basis[j] + remainder."""

    __slots__ = ("input", "quotients", "remainder", "basis")

    def __init__(self, input, quotients, remainder, basis):
        self.input = input
        self.quotients = quotients
        self.remainder = remainder
        self.basis = basis

    def check(self) -> bool:
        acc = self.remainder
        for q, g in zip(self.quotients, self.basis):
            acc = acc + q * g
        return acc == self.input

    @property
    def is_member(self) -> bool:
        return self.remainder.is_zero()


def _invert(c):
    if isinstance(c, GaussianRational):
        return 1 / c
    return Fraction(1) / c


def _nf_terms(ring, terms, reducers, order, want_quotients=False):
    """Divide the term dict by the reducer list.

    reducers: list of (lm, terms_dict) with monic leading coefficient.
    Returns (remainder_terms, quotients or None).
    """
    work = dict(terms)
    rem: dict = {}
    quotients = [dict() for _ in reducers] if want_quotients else None
    key = order.key
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = -1
        for idx, (lm, _gt) in enumerate(reducers):
            if monomial_divides(lm, m):
                hit = idx
                break
        if hit < 0:
            rem[m] = c
            continue
        lm, gt = reducers[hit]
        shift = monomial_div(m, lm)
        if want_quotients:
            qd = quotients[hit]
            prev = qd.get(shift)
            qd[shift] = c if prev is None else prev + c
        for gm, gc in gt.items():
            mm = tuple(a + b for a, b in zip(gm, shift))
            if mm == m:
                continue
            s = work.get(mm)
            d = c * gc
            if s is None:
                work[mm] = -d
            else:
                s = s - d
                if s:
                    work[mm] = s
                else:
                    del work[mm]
    return rem, quotients


class GroebnerBasis:
    """A reduced Groebner basis, optionally with a transformation matrix.

    ``transform[i]`` expresses generator i of the basis as a combination of
    the source generators, exactly.
    """

    def __init__(self, ring, order, polys, source, transform=None):
        self.ring = ring
        self.order = order
        self.polys = polys
        self.source = source
        self.transform = transform
        self._reducers = [(order.leading(g.terms), g.terms) for g in polys]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def leading_monomials(self) -> list:
        return [lm for lm, _ in self._reducers]

    def normal_form(self, p: Polynomial, want_certificate: bool = False):
        if p.ring != self.ring:
            raise RingError("polynomial is not in the basis ring")
        rem, quots = _nf_terms(
            self.ring, p.terms, self._reducers, self.order, want_quotients=want_certificate
        )
        remainder = Polynomial(self.ring, rem)
        if not want_certificate:
            return remainder
        quotients = [Polynomial(self.ring, q) for q in quots]
        return Certificate(p, quotients, remainder, list(self.polys))

    def reduce(self, p: Polynomial) -> Polynomial:
        return self.normal_form(p)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def express_in_source(self, p: Polynomial):
        """Exact coefficients c with p = sum_k c_k * source_k, or None."""
        if self.transform is None:
            raise ValueError("basis was computed without transformation data")
        cert = self.normal_form(p, want_certificate=True)
        if not cert.remainder.is_zero():
            return None
        m = len(self.source)
        coeffs = [self.ring.zero() for _ in range(m)]
        for q, row in zip(cert.quotients, self.transform):
            if q.is_zero():
                continue
            for k in range(m):
                coeffs[k] = coeffs[k] + q * row[k]
        return coeffs

    def same_ideal(self, other: "GroebnerBasis") -> bool:
        return all(self.contains(g) for g in other.polys) and all(
            other.contains(g) for g in self.polys
        )

    def dump(self) -> str:
        """Reduced basis in the textual polynomial syntax, one per line."""
        return "\n".join(str(g) for g in self.polys)


def buchberger(gens, order=None, extended: bool = False, deadline: float | None = None) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm.

    Normal selection strategy (smallest lcm in the order first) with the
    product and chain criteria.  ``extended`` tracks the transformation
    matrix expressing basis elements in the input generators.  ``deadline``
    is an absolute time.monotonic() bound; exceeding it raises
    ResourceBoundExceeded.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingError("generators from different rings")
    if order is None:
        order = default_order(ring)

    m = len(gens)
    basis = []  # list of dicts (terms), monic
    reps = []  # representation rows over source gens

    def unit_rep(i):
        return [ring.one() if j == i else ring.zero() for j in range(m)]

    def insert(terms, rep):
        lm = order.leading(terms)
        lc = terms[lm]
        if lc != 1:
            inv = _invert(lc)
            terms = {k: v * inv for k, v in terms.items()}
            if extended:
                rep = [r * inv for r in rep]
        basis.append((lm, terms))
        reps.append(rep)
        return len(basis) - 1

    for i, g in enumerate(gens):
        insert(dict(g.terms), unit_rep(i) if extended else None)

    pairs = set()
    treated = set()
    for i, j in combinations(range(len(basis)), 2):
        pairs.add((i, j))

    def lcm_of(i, j):
        return monomial_lcm(basis[i][0], basis[j][0])

    key = order.key
    while pairs:
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceBoundExceeded("basis computation exceeded its deadline")
        i, j = min(pairs, key=lambda ij: key(lcm_of(*ij)))
        pairs.discard((i, j))
        treated.add((i, j))
        lmi, lmj = basis[i][0], basis[j][0]
        lcm = monomial_lcm(lmi, lmj)
        # product criterion
        if all(a + b == c for a, b, c in zip(lmi, lmj, lcm)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if monomial_divides(basis[k][0], lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik in treated and pjk in treated and pik not in pairs and pjk not in pairs:
                    skip = True
                    break
        if skip:
            continue
        ui = monomial_div(lcm, lmi)
        uj = monomial_div(lcm, lmj)
        s: dict = {}
        for mm, cc in basis[i][1].items():
            s[tuple(a + b for a, b in zip(mm, ui))] = cc
        for mm, cc in basis[j][1].items():
            mshift = tuple(a + b for a, b in zip(mm, uj))
            prev = s.get(mshift)
            val = -cc if prev is None else prev - cc
            if val:
                s[mshift] = val
            elif prev is not None:
                del s[mshift]
        reducers = [(lm, t) for lm, t in basis]
        rem, quots = _nf_terms(ring, s, reducers, order, want_quotients=extended)
        if not rem:
            continue
        rep = None
        if extended:
            rep = [ring.zero() for _ in range(m)]
            umi = Polynomial(ring, {ui: _one(ring)})
            umj = Polynomial(ring, {uj: _one(ring)})
            for k in range(m):
                rep[k] = umi * reps[i][k] - umj * reps[j][k]
            for qd, rrow in zip(quots, reps):
                if qd:
                    qp = Polynomial(ring, qd)
                    for k in range(m):
                        rep[k] = rep[k] - qp * rrow[k]
        new = insert(rem, rep)
        for k in range(new):
            pairs.add((k, new))

    return _reduce_basis(ring, order, basis, reps, gens, extended)


def _one(ring):
    from .fields import field_one

    return field_one(ring.field)


def _reduce_basis(ring, order, basis, reps, source, extended):
    # discard members whose leading monomial is divisible by another's
    keep = []
    for i, (lmi, _) in enumerate(basis):
        dominated = False
        for j, (lmj, _) in enumerate(basis):
            if i == j:
                continue
            if monomial_divides(lmj, lmi) and (lmi != lmj or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    kept = [(basis[i][0], basis[i][1], reps[i]) for i in keep]
    # tail-reduce every survivor against the others
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            lm, terms, rep = kept[idx]
            reducers = [(l, t) for pos, (l, t, _r) in enumerate(kept) if pos != idx]
            rem, quots = _nf_terms(ring, terms, reducers, order, want_quotients=extended)
            if rem != terms:
                changed = True
                if extended:
                    others = [r for pos, (_l, _t, r) in enumerate(kept) if pos != idx]
                    for qd, rrow in zip(quots, others):
                        if qd:
                            qp = Polynomial(ring, qd)
                            rep = [a - qp * b for a, b in zip(rep, rrow)]
                lc = rem[order.leading(rem)]
                if lc != 1:
                    inv = _invert(lc)
                    rem = {k: v * inv for k, v in rem.items()}
                    if extended:
                        rep = [r * inv for r in rep]
                kept[idx] = (order.leading(rem), rem, rep)
    kept.sort(key=lambda item: order.key(item[0]))
    polys = [Polynomial(ring, terms) for _lm, terms, _rep in kept]
    transform = [rep for _lm, _terms, rep in kept] if extended else None
    return GroebnerBasis(ring, order, polys, list(source), transform)


# -- syzygies ----------------------------------------------------------------


def schreyer_syzygies(gb: GroebnerBasis) -> list:
    """Generating syzygies of the (monic, reduced) basis itself.

    One row per S-pair, from the standard lift of its reduction to zero.
    """
    ring, order = gb.ring, gb.order
    g = gb.polys
    rows = []
    for i, j in combinations(range(len(g)), 2):
        lmi, lmj = gb._reducers[i][0], gb._reducers[j][0]
        lcm = monomial_lcm(lmi, lmj)
        ui = Polynomial(ring, {monomial_div(lcm, lmi): _one(ring)})
        uj = Polynomial(ring, {monomial_div(lcm, lmj): _one(ring)})
        s = ui * g[i] - uj * g[j]
        cert = gb.normal_form(s, want_certificate=True)
        if not cert.remainder.is_zero():
            raise AssertionError("S-polynomial of a Groebner basis must reduce to zero")
        row = [ring.zero() for _ in g]
        row[i] = ui
        row[j] = -uj
        for k, q in enumerate(cert.quotients):
            row[k] = row[k] - q
        rows.append(row)
    return rows


def syzygies(gens, order=None, gb: GroebnerBasis | None = None) -> list:
    """Generating syzygies of the *given* generator tuple.

    Built from the Schreyer syzygies of the reduced basis transported along
    the transformation matrix, plus the rows of (identity - U*T) where
    U expresses the inputs in the basis and T the basis in the inputs.
    Every returned row satisfies sum_j row[j]*gens[j] = 0 exactly.
    """
    gens = list(gens)
    ring = gens[0].ring
    if order is None:
        order = default_order(ring)
    if gb is None or gb.transform is None:
        gb = buchberger(gens, order, extended=True)
    T = gb.transform  # basis = T * gens
    m = len(gens)
    rows = []
    for srow in schreyer_syzygies(gb):
        row = [ring.zero() for _ in range(m)]
        for l, coeff in enumerate(srow):
            if coeff.is_zero():
                continue
            for k in range(m):
                row[k] = row[k] + coeff * T[l][k]
        rows.append(row)
    # rows of 1 - U*T
    for i, f in enumerate(gens):
        cert = gb.normal_form(f, want_certificate=True)
        if not cert.remainder.is_zero():
            raise AssertionError("input generator does not reduce to zero against its basis")
        row = [ring.one() if k == i else ring.zero() for k in range(m)]
        for l, q in enumerate(cert.quotients):
            if q.is_zero():
                continue
            for k in range(m):
                row[k] = row[k] - q * T[l][k]
        rows.append(row)
    out = []
    for row in rows:
        if all(c.is_zero() for c in row):
            continue
        acc = ring.zero()
        for c, f in zip(row, gens):
            acc = acc + c * f
        if not acc.is_zero():
            raise AssertionError("constructed row is not a syzygy")
        out.append(row)
    return out


def syzygies_degreewise(gens, sigma: int) -> list:
    """Syzygies of weighted degree exactly sigma by brute-force kernels.

    Independent of the Groebner machinery; used as an oracle.  Rows are
    homogeneous with deg(row[j]) = sigma - deg(gens[j]).
    """
    from .linalg import kernel_of_columns

    ring = gens[0].ring
    degs = [g.weighted_degree() for g in gens]
    cols = []
    labels = []
    for j, (g, dg) in enumerate(zip(gens, degs)):
        for mon in ring.monomials_of_weight(sigma - dg):
            prod = Polynomial(ring, {mon: _one(ring)}) * g
            cols.append({mm: cc for mm, cc in prod.terms.items()})
            labels.append((j, mon))
    kern = kernel_of_columns(cols)
    rows = []
    for combo in kern:
        row = [ring.zero() for _ in gens]
        for idx, c in combo.items():
            j, mon = labels[idx]
            row[j] = row[j] + Polynomial(ring, {mon: c if c else c})
        rows.append(row)
    return rows


# -- elimination, intersection, quotients, saturation ------------------------


def eliminate(gens, block_names, inner_order=None, deadline: float | None = None) -> list:
    """Generators of the elimination ideal (intersection with the subring
    of the non-block variables), still expressed in the original ring."""
    ring = gens[0].ring
    block = [ring.var_index(v) for v in block_names]
    if not block:
        gbp = buchberger(gens, deadline=deadline)
        return list(gbp.polys)
    inner = inner_order or default_order(ring)
    order = BlockElimination(block, inner, ring.nvars)
    gb = buchberger(gens, order, deadline=deadline)
    bset = set(block)
    out = []
    for g in gb.polys:
        if all(all(m[i] == 0 for i in bset) for m in g.terms):
            out.append(g)
    return out


def _fresh_name(ring, base):
    name = base
    while name in ring.variables:
        name += "_"
    return name


def intersect(gens_a, gens_b) -> list:
    """Generators of the intersection of two ideals (elimination trick)."""
    ring = gens_a[0].ring
    u = _fresh_name(ring, "u@")
    ext = ring.extend([u], [1], prepend=True)
    ua = ext.variable(u)
    lifted = [ua * g.map_to(ext) for g in gens_a]
    lifted += [(ext.one() - ua) * g.map_to(ext) for g in gens_b]
    elim = eliminate(lifted, [u], inner_order=WGrevLex(ext.weights))
    return [restrict(g, ring) for g in elim]


def restrict(p: Polynomial, ring: WeightedRing) -> Polynomial:
    """Transport a polynomial that only uses ring's variables back to it."""
    idx = [p.ring.var_index(v) for v in ring.variables]
    others = set(range(p.ring.nvars)) - set(idx)
    terms = {}
    for m, c in p.terms.items():
        if any(m[i] for i in others):
            raise RingError("polynomial uses variables outside the target ring")
        terms[tuple(m[i] for i in idx)] = c
    return Polynomial(ring, terms)


def exact_divide(p: Polynomial, d: Polynomial) -> Polynomial:
    """The exact quotient p/d; raises if division is not exact."""
    ring = p.ring
    order = default_order(ring)
    rem, quots = _nf_terms(ring, p.terms, [(order.leading(d.terms), d.terms)], order, True)
    if rem:
        raise RingError("division is not exact")
    lc = d.terms[order.leading(d.terms)]
    q = Polynomial(ring, quots[0])
    return q * _invert(lc) if lc != 1 else q


def ideal_quotient(gens, divisor: Polynomial) -> list:
    """(I : f) via I ∩ (f) = f * (I : f)."""
    inter = intersect(gens, [divisor])
    return [exact_divide(g, divisor) for g in inter]


def saturate_single(gens, j: Polynomial) -> list:
    """(I : j^infinity) by the Rabinowitsch trick: adjoin s, eliminate."""
    ring = gens[0].ring
    s = _fresh_name(ring, "s@")
    ext = ring.extend([s], [1], prepend=True)
    sv = ext.variable(s)
    lifted = [g.map_to(ext) for g in gens]
    lifted.append(ext.one() - sv * j.map_to(ext))
    elim = eliminate(lifted, [s], inner_order=WGrevLex(ext.weights))
    return [restrict(g, ring) for g in elim]


def saturate(gens, aux_gens) -> list:
    """(I : J^infinity) = intersection of the single saturations."""
    current = None
    for j in aux_gens:
        if j.is_zero():
            continue
        sat = saturate_single(gens, j)
        current = sat if current is None else intersect(current, sat)
    if current is None:
        return list(gens)
    return list(buchberger(current).polys)


def saturate_by_iteration(gens, aux_gens) -> list:
    """Stabilized iterated ideal quotient; cross-check for saturate()."""
    current = list(buchberger(gens).polys)
    while True:
        step = current
        for j in aux_gens:
            if j.is_zero():
                continue
            step = ideal_quotient(step, j)
        nxt = list(buchberger(step).polys) if step else []
        if _same_polys(nxt, current):
            return current
        current = nxt


def _same_polys(a, b):
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


def ideal_square(gens) -> list:
    """All pairwise products; generators of I^2."""
    out = []
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            out.append(gens[i] * gens[j])
    return out


# -- dimension and graded data ------------------------------------------------


def krull_dimension(gens, gb: GroebnerBasis | None = None) -> int:
    """Dimension of the zero set, from the leading-term ideal.

    The dimension equals the largest cardinality of a variable subset S
    such that no leading monomial is supported entirely inside S.
    """
    if gb is None:
        gb = buchberger(gens)
    ring = gb.ring
    lms = gb.leading_monomials()
    if any(not any(lm) for lm in lms):
        return -1  # unit ideal: empty zero set
    n = ring.nvars
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in lms]
    best = 0
    for size in range(n, 0, -1):
        for subset in combinations(range(n), size):
            sset = set(subset)
            if all(not supp <= sset for supp in supports):
                return size
    return best


def graded_quotient_basis(gb: GroebnerBasis, d: int) -> list:
    """Standard monomials of weighted degree d of the quotient ring."""
    ring = gb.ring
    lms = gb.leading_monomials()
    out = []
    for mon in ring.monomials_of_weight(d):
        if not any(monomial_divides(lm, mon) for lm in lms):
            out.append(mon)
    return out
