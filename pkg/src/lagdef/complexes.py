"""Graded pieces of the deformation complex of an involutive ideal.

For I = (f_1..f_m) involutive in a weighted symplectic ring, this module
realizes, degree by degree:

  * the quotient ring pieces O_L = O/I (standard monomials),
  * C^0 = O_L, C^1 = tuples (g_1..g_m) annihilating the syzygy rows of
    the generators modulo I, C^2 = antisymmetric pair tuples with the
    induced constraints (the exterior-square presentation),
  * the differential delta with the bracket-correction term,
  * presentations of the Kaehler forms Omega^1, Omega^2,
  * the morphism J from forms to cochains and the cokernel pieces
    G^p = C^p / im J with exact projection maps.

Gradings are "geometric": a C^p piece of degree d has component degrees
deg g_j = d - p*w + deg f_j per generator slot (w the weight of the
symplectic form), so that delta and J both preserve the degree.
"""

from __future__ import annotations

from .fields import field_one
from .groebner import (
    GroebnerBasis,
    buchberger,
    default_order,
    graded_quotient_basis,
    ideal_square,
    syzygies,
)
from .linalg import Echelon, Subquotient, kernel_of_columns, vec_axpy
from .ring import Polynomial
from .symplectic import LagrangianVariety


class ComplexError(ValueError):
    pass


def minimal_syzygy_rows(rows, gens) -> list:
    """Prune syzygy rows that lie in the module span of earlier ones.

    Rows must be homogeneous; the test is per-degree linear algebra in the
    ambient polynomial ring (no Groebner data involved).
    """
    if not rows:
        return []
    ring = gens[0].ring
    degs = [g.weighted_degree() for g in gens]

    def row_degree(row):
        ds = set()
        for a, dg in zip(row, degs):
            if not a.is_zero():
                wd = a.weighted_degree()
                ds.add(wd + dg)
        if len(ds) != 1:
            raise ComplexError("inhomogeneous syzygy row")
        return next(iter(ds))

    tagged = sorted((row_degree(r), i, r) for i, r in enumerate(rows))
    kept = []
    kept_degs = []
    for sigma, _i, row in tagged:
        ech = Echelon()
        index = {}

        def coords(rowpolys, shift_mon=None):
            vec = {}
            for j, a in enumerate(rowpolys):
                if a.is_zero():
                    continue
                terms = a.terms if shift_mon is None else {
                    tuple(x + y for x, y in zip(m, shift_mon)): c for m, c in a.terms.items()
                }
                for m, c in terms.items():
                    key = index.setdefault((j, m), len(index))
                    vec[key] = vec.get(key, 0) + c
            return {k: v for k, v in vec.items() if v}

        for krow, ksigma in zip(kept, kept_degs):
            for u in ring.monomials_of_weight(sigma - ksigma):
                ech.add(coords(krow, u))
        if not ech.contains(coords(row)):
            kept.append(row)
            kept_degs.append(sigma)
    return kept


class GradedMap:
    """A degree-indexed family of exact matrices (columns are sparse dicts)."""

    def __init__(self, source: str, target: str, shift: int = 0):
        self.source = source
        self.target = target
        self.shift = shift
        self.matrices: dict = {}

    def set(self, d: int, columns: list):
        self.matrices[d] = columns

    def __getitem__(self, d: int) -> list:
        return self.matrices[d]

    def dump(self, d: int) -> str:
        """Plain textual matrix of the degree-d piece (rows of entries)."""
        cols = self.matrices[d]
        nrows = 0
        for col in cols:
            for idx in col:
                nrows = max(nrows, idx + 1)
        lines = []
        for i in range(nrows):
            lines.append(" ".join(str(col.get(i, 0)) for col in cols))
        return "\n".join(lines) if cols else "(empty)"


class ConormalPresentation:
    """The conormal module I/I^2 presented by the ideal generators.

    ``relations`` are the generating syzygy rows of the generators reduced
    modulo the ideal; each row annihilates the generator tuple modulo I^2.
    """

    def __init__(self, engine: "ComplexEngine"):
        self.generator_count = engine.m
        gb = engine.gb
        self.relations = [
            tuple(gb.reduce(a) for a in row) for row in engine.syzygy_rows
        ]
        self.engine = engine

    def check_relations_mod_square(self) -> bool:
        gb2 = self.engine.variety.groebner_square()
        for row in self.relations:
            acc = self.engine.ring.zero()
            for a, f in zip(row, self.engine.gens):
                acc = acc + a * f
            if not gb2.reduce(acc).is_zero():
                return False
        return True


class ComplexEngine:
    """Per-degree linear-algebra engine for one lagrangian variety."""

    def __init__(self, variety: LagrangianVariety):
        self.variety = variety
        self.ring = variety.ring
        self.poisson = variety.poisson
        ok, degs = variety.is_quasi_homogeneous()
        if not ok:
            raise ComplexError("the ideal generators must be weighted-homogeneous")
        self.gens = variety.generators
        self.degs = degs
        self.m = len(self.gens)
        self.w_omega = self.poisson.degree_shift()
        self.gb = variety.groebner(extended=True)
        self._one = field_one(self.ring.field)

        # exact conormal bracket coefficients {f_i,f_j} = sum_k c_k f_k
        self.bracket_coeffs = {}
        self.brackets = {}
        for i in range(self.m):
            for j in range(i + 1, self.m):
                br = self.poisson.bracket(self.gens[i], self.gens[j])
                self.brackets[(i, j)] = br
                if br.is_zero():
                    self.bracket_coeffs[(i, j)] = [self.ring.zero()] * self.m
                    continue
                coeffs = self.gb.express_in_source(br)
                if coeffs is None:
                    raise ComplexError(
                        f"bracket of generators {i},{j} is not in the ideal (not involutive)"
                    )
                self.bracket_coeffs[(i, j)] = coeffs

        raw = syzygies(self.gens, gb=self.gb)
        reduced_rows = []
        for row in raw:
            red = [self.gb.reduce(a) for a in row]
            if any(not a.is_zero() for a in red):
                reduced_rows.append(row)
        self.syzygy_rows = minimal_syzygy_rows(reduced_rows, self.gens)
        self.syzygy_degrees = []
        for row in self.syzygy_rows:
            ds = {a.weighted_degree() + dg for a, dg in zip(row, self.degs) if not a.is_zero()}
            self.syzygy_degrees.append(next(iter(ds)))

        # J on the coordinate differentials: J(dx_v) = ({x_v, f_j})_j mod I
        self.j_gens = []
        for v in range(self.ring.nvars):
            xv = self.ring.variable(self.ring.variables[v])
            self.j_gens.append(
                tuple(self.gb.reduce(self.poisson.bracket(xv, f)) for f in self.gens)
            )

        self.pairs = [(i, j) for i in range(self.m) for j in range(i + 1, self.m)]
        self.pair_index = {p: k for k, p in enumerate(self.pairs)}

        self._ol_cache: dict = {}
        self._c_cache: dict = {}
        self._g_cache: dict = {}
        self._omega_cache: dict = {}
        self._nfmon_cache: dict = {}
        self._gdelta_cache: dict = {}
        self._gmult_cache: dict = {}

    # -- quotient ring pieces ------------------------------------------------

    def ol_basis(self, d: int):
        """Standard monomials of weighted degree d, with an index map."""
        if d < 0:
            return (), {}
        hit = self._ol_cache.get(d)
        if hit is None:
            mons = tuple(graded_quotient_basis(self.gb, d))
            hit = (mons, {m: i for i, m in enumerate(mons)})
            self._ol_cache[d] = hit
        return hit

    def ol_dim(self, d: int) -> int:
        return len(self.ol_basis(d)[0])

    def nf_monomial(self, mon: tuple) -> dict:
        """Cached normal form of a single monomial, as a term dict."""
        hit = self._nfmon_cache.get(mon)
        if hit is None:
            hit = self.gb.reduce(Polynomial(self.ring, {mon: self._one})).terms
            self._nfmon_cache[mon] = hit
        return hit

    def nf_coords(self, p: Polynomial, d: int, index: dict) -> dict:
        """Coordinates of NF(p) over the degree-d standard monomials."""
        acc: dict = {}
        for m, c in p.terms.items():
            for rm, rc in self.nf_monomial(m).items():
                s = acc.get(rm)
                v = rc * c
                if s is None:
                    acc[rm] = v
                else:
                    s = s + v
                    if s:
                        acc[rm] = s
                    else:
                        del acc[rm]
        vec = {}
        for m, c in acc.items():
            pos = index.get(m)
            if pos is None:
                raise ComplexError("normal form escaped the expected graded piece")
            vec[pos] = c
        return vec

    # -- cochain spaces --------------------------------------------------------

    def component_degrees(self, p: int, d: int) -> list:
        if p == 0:
            return [d]
        if p == 1:
            return [d - self.w_omega + dg for dg in self.degs]
        if p == 2:
            return [d - 2 * self.w_omega + self.degs[i] + self.degs[j] for i, j in self.pairs]
        raise ComplexError("only p <= 2 is supported")

    def ambient_layout(self, p: int, d: int):
        """Component monomial bases and flat offsets for C^p degree d."""
        comps = []
        offsets = []
        total = 0
        for dd in self.component_degrees(p, d):
            mons, index = self.ol_basis(dd)
            offsets.append(total)
            comps.append((dd, mons, index))
            total += len(mons)
        return comps, offsets, total

    def tuple_coords(self, p: int, d: int, polys) -> dict:
        comps, offsets, _n = self.ambient_layout(p, d)
        vec = {}
        for slot, poly in enumerate(polys):
            if poly.is_zero():
                continue
            dd, _mons, index = comps[slot]
            for pos, c in self.nf_coords(poly, dd, index).items():
                vec[offsets[slot] + pos] = c
        return vec

    def coords_tuple(self, p: int, d: int, vec: dict):
        comps, offsets, _n = self.ambient_layout(p, d)
        nslots = len(comps)
        polys = [self.ring.zero() for _ in range(nslots)]
        for flat, c in vec.items():
            slot = nslots - 1
            for s in range(nslots):
                if s + 1 == nslots or offsets[s + 1] > flat:
                    slot = s
                    break
            dd, mons, _index = comps[slot]
            polys[slot] = polys[slot] + Polynomial(self.ring, {mons[flat - offsets[slot]]: c})
        return tuple(polys)

    def cochain_basis(self, p: int, d: int):
        """Basis of C^p in geometric degree d, as tuples of polynomials."""
        key = (p, d)
        hit = self._c_cache.get(key)
        if hit is not None:
            return hit
        if p == 0:
            mons, _ = self.ol_basis(d)
            basis = [(Polynomial(self.ring, {m: self._one}),) for m in mons]
            self._c_cache[key] = basis
            return basis
        comps, offsets, total = self.ambient_layout(p, d)
        if total == 0:
            self._c_cache[key] = []
            return []
        if p == 1:
            constraints = self._c1_constraints(d, comps, offsets, total)
        else:
            constraints = self._c2_constraints(d, comps, offsets, total)
        if constraints is None:
            combos = [{j: self._one} for j in range(total)]
        else:
            combos = kernel_of_columns(constraints)
        basis = []
        for combo in combos:
            vec = dict(combo)
            basis.append(self.coords_tuple(p, d, vec))
        self._c_cache[key] = basis
        return basis

    def _c1_constraints(self, d, comps, offsets, total):
        """Columns of the syzygy-constraint map for C^1 at degree d."""
        if not self.syzygy_rows:
            return None
        cols = [dict() for _ in range(total)]
        row_offset = 0
        any_constraint = False
        for row, sigma in zip(self.syzygy_rows, self.syzygy_degrees):
            dt = d - self.w_omega + sigma
            tmons, tindex = self.ol_basis(dt)
            if not tmons:
                continue
            for slot in range(self.m):
                a = row[slot]
                if a.is_zero():
                    continue
                dd, mons, _index = comps[slot]
                for pos, mon in enumerate(mons):
                    prod = a * Polynomial(self.ring, {mon: self._one})
                    coords = self.nf_coords(prod, dt, tindex)
                    if coords:
                        any_constraint = True
                        col = cols[offsets[slot] + pos]
                        for rpos, c in coords.items():
                            key = row_offset + rpos
                            col[key] = col.get(key, 0) + c
            row_offset += len(tmons)
        if not any_constraint:
            return None
        return [{k: v for k, v in col.items() if v} for col in cols]

    def _c2_constraints(self, d, comps, offsets, total):
        """Constraints h(a ^ e_k) = 0 from each syzygy row a and slot k."""
        if not self.syzygy_rows:
            return None
        cols = [dict() for _ in range(total)]
        row_offset = 0
        any_constraint = False
        for row, sigma in zip(self.syzygy_rows, self.syzygy_degrees):
            for k in range(self.m):
                dt = d - 2 * self.w_omega + sigma + self.degs[k]
                tmons, tindex = self.ol_basis(dt)
                if not tmons:
                    continue
                for j in range(self.m):
                    a = row[j]
                    if a.is_zero() or j == k:
                        continue
                    if j < k:
                        pslot, sign = self.pair_index[(j, k)], 1
                    else:
                        pslot, sign = self.pair_index[(k, j)], -1
                    dd, mons, _index = comps[pslot]
                    for pos, mon in enumerate(mons):
                        prod = a * Polynomial(self.ring, {mon: self._one})
                        coords = self.nf_coords(prod, dt, tindex)
                        if coords:
                            any_constraint = True
                            col = cols[offsets[pslot] + pos]
                            for rpos, c in coords.items():
                                key = row_offset + rpos
                                val = c if sign > 0 else -c
                                col[key] = col.get(key, 0) + val
                row_offset += len(tmons)
        if not any_constraint:
            return None
        return [{k: v for k, v in col.items() if v} for col in cols]

    def cochain_dim(self, p: int, d: int) -> int:
        return len(self.cochain_basis(p, d))

    # -- differential -----------------------------------------------------------

    def delta0(self, u: Polynomial) -> tuple:
        """delta of a function: h |-> {u, h}, i.e. the tuple ({u, f_j})_j."""
        return tuple(self.gb.reduce(self.poisson.bracket(u, f)) for f in self.gens)

    def delta1(self, phi) -> tuple:
        """delta of phi in C^1: values on f_i ^ f_j for i < j."""
        out = []
        for i, j in self.pairs:
            val = (
                -self.poisson.bracket(self.gens[i], phi[j])
                + self.poisson.bracket(self.gens[j], phi[i])
            )
            for k, c in enumerate(self.bracket_coeffs[(i, j)]):
                if not c.is_zero() and not phi[k].is_zero():
                    val = val + c * phi[k]
            out.append(self.gb.reduce(val))
        return tuple(out)

    def delta_matrix(self, p: int, d: int) -> list:
        """Columns of delta: C^p_d -> C^{p+1}_d over the ambient coordinates."""
        if p == 0:
            basis = self.cochain_basis(0, d)
            return [self.tuple_coords(1, d, self.delta0(b[0])) for b in basis]
        if p == 1:
            basis = self.cochain_basis(1, d)
            return [self.tuple_coords(2, d, self.delta1(b)) for b in basis]
        raise ComplexError("delta is only computed for p in {0, 1}")

    # -- wedge -------------------------------------------------------------------

    def wedge(self, p: int, phi, q: int, psi):
        """Shuffle product of cochains; supports p + q <= 2."""
        if p + q > 2:
            raise ComplexError("wedge beyond degree 2 is unsupported")
        if p == 0:
            f = phi[0] if isinstance(phi, tuple) else phi
            vals = psi if isinstance(psi, tuple) else (psi,)
            return tuple(self.gb.reduce(f * v) for v in vals)
        if q == 0:
            return self.wedge(q, psi, p, phi)
        # p = q = 1
        out = []
        for i, j in self.pairs:
            out.append(self.gb.reduce(phi[i] * psi[j] - phi[j] * psi[i]))
        return tuple(out)

    # -- Kaehler forms and J ------------------------------------------------------

    def omega_layout(self, p: int, d: int):
        if p == 1:
            slots = list(range(self.ring.nvars))
            degsl = [d - self.ring.weights[v] for v in slots]
        elif p == 2:
            slots = [(i, j) for i in range(self.ring.nvars) for j in range(i + 1, self.ring.nvars)]
            degsl = [d - self.ring.weights[i] - self.ring.weights[j] for i, j in slots]
        else:
            raise ComplexError("omega pieces exist for p in {1, 2}")
        comps = []
        offsets = []
        total = 0
        for dd in degsl:
            mons, index = self.ol_basis(dd)
            offsets.append(total)
            comps.append((dd, mons, index))
            total += len(mons)
        return slots, comps, offsets, total

    def omega_quotient(self, p: int, d: int) -> Subquotient:
        """Omega^p piece at degree d as a subquotient of the free module."""
        key = (p, d)
        hit = self._omega_cache.get(key)
        if hit is not None:
            return hit
        slots, comps, offsets, total = self.omega_layout(p, d)
        numerator = [{i: self._one} for i in range(total)]
        denominator = []
        if p == 1:
            for jgen, dg in zip(self.gens, self.degs):
                grads = [jgen.derivative(v) for v in range(self.ring.nvars)]
                for u in self.ring.monomials_of_weight(d - dg):
                    vec = {}
                    um = Polynomial(self.ring, {u: self._one})
                    for slot_idx, v in enumerate(slots):
                        g = grads[v]
                        if g.is_zero():
                            continue
                        dd, _mons, index = comps[slot_idx]
                        for pos, c in self.nf_coords(um * g, dd, index).items():
                            vec[offsets[slot_idx] + pos] = c
                    if vec:
                        denominator.append(vec)
        else:
            pair_pos = {pair: k for k, pair in enumerate(slots)}
            for jgen, dg in zip(self.gens, self.degs):
                grads = [jgen.derivative(v) for v in range(self.ring.nvars)]
                for l in range(self.ring.nvars):
                    dl = d - dg - self.ring.weights[l]
                    for u in self.ring.monomials_of_weight(dl):
                        um = Polynomial(self.ring, {u: self._one})
                        vec = {}
                        for i in range(self.ring.nvars):
                            if i == l:
                                continue
                            g = grads[i]
                            if g.is_zero():
                                continue
                            if i < l:
                                slot_idx, sign = pair_pos[(i, l)], 1
                            else:
                                slot_idx, sign = pair_pos[(l, i)], -1
                            dd, _mons, index = comps[slot_idx]
                            for pos, c in self.nf_coords(um * g, dd, index).items():
                                key2 = offsets[slot_idx] + pos
                                val = c if sign > 0 else -c
                                vec[key2] = vec.get(key2, 0) + val
                        vec = {k: v for k, v in vec.items() if v}
                        if vec:
                            denominator.append(vec)
        sq = Subquotient(numerator, denominator)
        self._omega_cache[key] = sq
        return sq

    def j_image_vectors(self, p: int, d: int) -> list:
        """Spanning vectors of im(J) in the C^p ambient coordinates."""
        out = []
        if p == 1:
            for v in range(self.ring.nvars):
                jg = self.j_gens[v]
                if all(g.is_zero() for g in jg):
                    continue
                for u in self.ring.monomials_of_weight(d - self.ring.weights[v]):
                    um = Polynomial(self.ring, {u: self._one})
                    vec = self.tuple_coords(1, d, tuple(um * g for g in jg))
                    if vec:
                        out.append(vec)
        elif p == 2:
            wedges = {}
            for a in range(self.ring.nvars):
                for b in range(a + 1, self.ring.nvars):
                    w = self.wedge(1, self.j_gens[a], 1, self.j_gens[b])
                    if any(not x.is_zero() for x in w):
                        wedges[(a, b)] = w
            for (a, b), w in wedges.items():
                dd = d - self.ring.weights[a] - self.ring.weights[b]
                for u in self.ring.monomials_of_weight(dd):
                    um = Polynomial(self.ring, {u: self._one})
                    vec = self.tuple_coords(2, d, tuple(um * x for x in w))
                    if vec:
                        out.append(vec)
        else:
            raise ComplexError("J exists for p in {1, 2}")
        return out

    def j_matrix(self, p: int, d: int):
        """Columns of J on the Omega^p quotient basis, in C^p coordinates."""
        sq = self.omega_quotient(p, d)
        slots, comps, offsets, _total = self.omega_layout(p, d)
        cols = []
        for rep in sq.basis:
            acc = None
            for flat, c in rep.items():
                slot_idx = 0
                for s in range(len(offsets)):
                    if s + 1 == len(offsets) or offsets[s + 1] > flat:
                        slot_idx = s
                        break
                dd, mons, _index = comps[slot_idx]
                mon = mons[flat - offsets[slot_idx]]
                um = Polynomial(self.ring, {mon: c})
                if p == 1:
                    v = slots[slot_idx]
                    tup = tuple(um * g for g in self.j_gens[v])
                    vec = self.tuple_coords(1, d, tup)
                else:
                    a, b = slots[slot_idx]
                    w = self.wedge(1, self.j_gens[a], 1, self.j_gens[b])
                    vec = self.tuple_coords(2, d, tuple(um * x for x in w))
                acc = vec if acc is None else vec_axpy(acc, self._one, vec)
            cols.append(acc or {})
        return cols

    # -- cokernel pieces -----------------------------------------------------------

    def g_piece(self, p: int, d: int):
        """The quotient G^p_d = C^p_d / im(J)_d with projection data.

        Returns (Subquotient, basis tuples).  The flat coordinates are the
        C^p ambient ones.
        """
        key = (p, d)
        hit = self._g_cache.get(key)
        if hit is not None:
            return hit
        cbasis = self.cochain_basis(p, d)
        numerator = [self.tuple_coords(p, d, b) for b in cbasis]
        denominator = self.j_image_vectors(p, d)
        sq = Subquotient(numerator, denominator)
        # sanity: the J image must lie inside the cochain space
        span = Echelon()
        for v in numerator:
            span.add(v)
        for v in denominator:
            if not span.contains(v):
                raise ComplexError(f"J image escapes C^{p} in degree {d}")
        reps = []
        for rep_vec in sq.basis:
            reps.append(self.coords_tuple(p, d, rep_vec))
        hit = (sq, reps)
        self._g_cache[key] = hit
        return hit

    def g_dim(self, p: int, d: int) -> int:
        return self.g_piece(p, d)[0].dim

    def g_project(self, p: int, d: int, polys) -> dict:
        sq, _reps = self.g_piece(p, d)
        return sq.project(self.tuple_coords(p, d, polys))

    def g_delta_matrix(self, d: int) -> list:
        """Columns of the induced map G^1_d -> G^2_d (cached)."""
        hit = self._gdelta_cache.get(d)
        if hit is not None:
            return hit
        _sq1, reps = self.g_piece(1, d)
        cols = []
        for phi in reps:
            cols.append(self.g_project(2, d, self.delta1(phi)))
        self._gdelta_cache[d] = cols
        return cols

    # -- certificates and graded-map surfaces -----------------------------------

    def conormal_bracket(self, i: int, j: int):
        """Coefficients c with {f_i, f_j} = sum_k c_k f_k, exactly.

        The identity is verified on return; reducing c modulo I gives the
        coefficient tuple of the bracket in the conormal module.
        """
        if i > j:
            coeffs = [(-c) for c in self.conormal_bracket(j, i)[0]]
            return coeffs, True
        if i == j:
            return [self.ring.zero()] * self.m, True
        coeffs = self.bracket_coeffs[(i, j)]
        acc = self.brackets[(i, j)]
        for c, f in zip(coeffs, self.gens):
            acc = acc - c * f
        return coeffs, acc.is_zero()

    def delta_graded_map(self, p: int, degrees) -> GradedMap:
        gm = GradedMap(f"C^{p}", f"C^{p + 1}", 0)
        for d in degrees:
            gm.set(d, self.delta_matrix(p, d))
        return gm

    def j_graded_map(self, p: int, degrees) -> GradedMap:
        gm = GradedMap(f"Omega^{p}", f"C^{p}", 0)
        for d in degrees:
            gm.set(d, self.j_matrix(p, d))
        return gm

    def h0_dimension(self, d: int) -> int:
        """dim ker(delta: O_L -> C^1) in degree d (constants only, per the
        structure theorem; asserted by the property suite)."""
        cols = self.delta_matrix(0, d)
        from .linalg import kernel_of_columns

        return len(kernel_of_columns(cols)) if cols else 0

    def j_kernel_vectors(self, p: int, d: int) -> list:
        """Kernel of J on the Omega^p piece: torsion differential forms."""
        from .linalg import kernel_of_columns

        sq = self.omega_quotient(p, d)
        cols = self.j_matrix(p, d)
        kern = kernel_of_columns(cols)
        out = []
        for combo in kern:
            vec: dict = {}
            for idx, c in combo.items():
                for k, v in sq.basis[idx].items():
                    s = vec.get(k)
                    vv = c * v
                    vec[k] = vv if s is None else s + vv
            out.append({k: v for k, v in vec.items() if v})
        return out

    def omega_mult_matrix(self, p: int, d: int, t: Polynomial) -> list:
        """Multiplication by t on the Omega^p pieces (for torsion tests)."""
        dt = t.weighted_degree()
        sq = self.omega_quotient(p, d)
        target = self.omega_quotient(p, d + dt)
        slots, comps, offsets, _n = self.omega_layout(p, d)
        tslots, tcomps, toffsets, _tn = self.omega_layout(p, d + dt)
        cols = []
        for rep in sq.basis:
            vec: dict = {}
            for flat, c in rep.items():
                slot_idx = 0
                for s in range(len(offsets)):
                    if s + 1 == len(offsets) or offsets[s + 1] > flat:
                        slot_idx = s
                        break
                dd, mons, _index = comps[slot_idx]
                mon = mons[flat - offsets[slot_idx]]
                prod = t * Polynomial(self.ring, {mon: c})
                tdd, _tmons, tindex = tcomps[slot_idx]
                for pos, cc in self.nf_coords(prod, tdd, tindex).items():
                    key = toffsets[slot_idx] + pos
                    prev = vec.get(key)
                    vec[key] = cc if prev is None else prev + cc
            cols.append(target.project({k: v for k, v in vec.items() if v}))
        return cols

    def g_mult_matrix(self, p: int, d: int, t: Polynomial) -> list:
        """Columns of multiplication by t: G^p_d -> G^p_{d + deg t} (cached)."""
        key = (p, d, id(t))
        hit = self._gmult_cache.get(key)
        if hit is not None:
            return hit
        dt = t.weighted_degree()
        _sq, reps = self.g_piece(p, d)
        cols = []
        for phi in reps:
            cols.append(self.g_project(p, d + dt, tuple(t * comp for comp in phi)))
        self._gmult_cache[key] = cols
        return cols
