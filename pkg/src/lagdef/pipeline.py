"""Deformation pipeline: stratification, torsion/free splitting along a
finite coordinate, connection extraction, and the LT^1 / LT^2 report.

The primary dimension computation is the exact per-degree one:

    LT^1 = sum_d dim ker(delta: G^1_d -> G^2_d)
    LT^2 = sum_d dim coker(delta: G^1_d -> G^2_d)

which equals the germ dimensions at the cone point once the graded pieces
vanish beyond a certified degree.  The certificate comes from the
torsion/free analysis: torsion lives in finitely many degrees, and on the
free ladders the matrices are affine in the layer index, so their
determinants vanish only at finitely many explicit resonance degrees.
The eigenvalue table is read off the same affine pencils.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .complexes import ComplexEngine
from .fields import GaussianRational
from .groebner import (
    buchberger,
    default_order,
    graded_quotient_basis,
    krull_dimension,
    saturate,
)
from .linalg import (
    AugmentedEchelon,
    Echelon,
    kernel_of_columns,
    poly_trim,
    rational_eigenvalues,
    rank_of_rows,
    vec_axpy,
)


from .ring import Polynomial
from .symplectic import LagrangianVariety


class PipelineError(ValueError):
    pass


def _unit_for(engine):
    from .fields import field_one

    return field_one(engine.ring.field)


# -- stratification ------------------------------------------------------------


@dataclass
class Stratum:
    k: int
    ideal: list
    dimension: int
    satisfies_bound: bool


@dataclass
class StratumReport:
    strata: list
    condition_p: bool
    notes: list = field(default_factory=list)


def _jacobian(variety: LagrangianVariety):
    ring = variety.ring
    return [[g.derivative(v) for v in range(ring.nvars)] for g in variety.generators]


def _minors(matrix, size, ring):
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    out = []
    if size > rows or size > cols:
        return out
    for rsel in combinations(range(rows), size):
        for csel in combinations(range(cols), size):
            out.append(_det([[matrix[i][j] for j in csel] for i in rsel], ring))
    return out


def _det(m, ring):
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = ring.zero()
    for j in range(n):
        minor = [[m[i][jj] for jj in range(n) if jj != j] for i in range(1, n)]
        term = m[0][j] * _det(minor, ring)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def rank_le_locus(variety: LagrangianVariety, k: int) -> list:
    """Generators of I plus the (k+1)-minors of the Jacobian."""
    jac = _jacobian(variety)
    minors = [m for m in _minors(jac, k + 1, variety.ring) if not m.is_zero()]
    return list(variety.generators) + minors


def singular_locus_ideal(variety: LagrangianVariety) -> list:
    return rank_le_locus(variety, variety.n - 1)


def stratify(variety: LagrangianVariety) -> StratumReport:
    """Embedding-dimension strata via Jacobian rank loci.

    S_k is the locus of points where the Jacobian has rank exactly k
    (embedding dimension 2n - k); its closure is the rank <= k locus.
    The verdict checks dim S_k <= k for every k, saturating away the
    deeper stratum when the closure alone is too big.
    """
    n = variety.n
    strata = []
    notes = []
    ok = True
    prev_gens = None
    for k in range(0, n + 1):
        gens = rank_le_locus(variety, k)
        gb = buchberger(gens)
        dim = krull_dimension(gens, gb)
        fits = dim <= k
        if not fits and prev_gens is not None:
            # closure too big: remove components inside the deeper locus
            residual = saturate([g for g in gb.polys], [h for h in prev_gens if not h.is_zero()])
            rdim = krull_dimension(residual) if residual else -1
            if rdim <= k:
                fits = True
                notes.append(
                    f"stratum {k}: closure has dimension {dim}, residual after saturation {rdim}"
                )
            else:
                dim = rdim
        strata.append(Stratum(k, list(gb.polys), dim, fits))
        if not fits:
            ok = False
        prev_gens = list(gb.polys)
    return StratumReport(strata, ok, notes)


# -- choice of the finite coordinate --------------------------------------------


def finite_on_support(variety: LagrangianVariety, t: Polynomial, sing: list) -> bool:
    gens = list(sing) + [t]
    return krull_dimension(gens) <= 0


def choose_t(variety: LagrangianVariety, override: Polynomial | None = None):
    """Pick an element finite on the singular support.

    Tries single variables by increasing weight, then sums of two
    variables of equal weight (needed when every axis lies in the
    singular locus).  Returns (t, candidate log).
    """
    sing = singular_locus_ideal(variety)
    tried = []
    if override is not None:
        if finite_on_support(variety, override, sing):
            return override, tried
        tried.append(str(override))
        raise PipelineError(
            f"requested t = {override} is not finite on the singular support"
        )
    ring = variety.ring
    order = sorted(range(ring.nvars), key=lambda v: (ring.weights[v], v))
    for v in order:
        t = ring.variable(ring.variables[v])
        if finite_on_support(variety, t, sing):
            return t, tried
        tried.append(str(t))
    for v, w in combinations(order, 2):
        if ring.weights[v] != ring.weights[w]:
            continue
        t = ring.variable(ring.variables[v]) + ring.variable(ring.variables[w])
        if finite_on_support(variety, t, sing):
            return t, tried
        tried.append(str(t))
    for v, w in combinations(order, 2):
        if ring.weights[v] != ring.weights[w]:
            continue
        t = ring.variable(ring.variables[v]) - ring.variable(ring.variables[w])
        if finite_on_support(variety, t, sing):
            return t, tried
        tried.append(str(t))
    raise PipelineError(
        "no admissible finite element found; tried " + ", ".join(tried)
    )


# -- graded module data -----------------------------------------------------------


class GradedModule:
    """Per-degree ladder bases of one G^p, split into torsion and free parts.

    Works entirely in the coordinates of the per-degree quotient bases; the
    multiplication-by-t matrices are computed once per degree.  The basis
    of G^p_d is organized as a forest: fresh generators appear at their
    birth degree and get multiplied by t afterwards.
    """

    def __init__(self, engine: ComplexEngine, p: int, t: Polynomial, d_lo: int, d_hi: int):
        self.engine = engine
        self.p = p
        self.t = t
        self.wt = t.weighted_degree()
        self.d_lo = d_lo
        self.d_hi = d_hi
        self.tmats: dict = {}  # d -> columns of t: G_d -> G_{d+w} (basis coords)
        self.torsion: dict = {}  # d -> list of coordinate vectors (unit-basis coords)
        self.ladder: dict = {}  # d -> list of (gen_id, level, coord vec)
        self.gen_degrees: dict = {}
        self.gens: dict = {}  # gen_id -> cochain tuple (representative at birth)
        self.split_ok = True
        self.notes: list = []
        self._build()

    def _tmat(self, d):
        cols = self.tmats.get(d)
        if cols is None:
            _sq, reps = self.engine.g_piece(self.p, d)
            cols = self.engine.g_mult_matrix(self.p, d, self.t)
            self.tmats[d] = cols
        return cols

    def _tmul_vec(self, d, vec):
        cols = self._tmat(d)
        acc: dict = {}
        for idx, c in vec.items():
            col = cols[idx]
            if col:
                acc = vec_axpy(acc, c, col)
        return acc

    def _build(self):
        self._compute_torsion()
        eng, p, wt = self.engine, self.p, self.wt
        next_id = 0
        for d in range(self.d_lo, self.d_hi + 1):
            sq, reps = eng.g_piece(p, d)
            dim = sq.dim
            if dim == 0:
                self.ladder[d] = []
                continue
            tors = self.torsion.get(d, [])
            span = Echelon()
            for v in tors:
                span.add(v)
            lifted = []
            for gen_id, level, vec in self.ladder.get(d - wt, []):
                tvec = self._tmul_vec(d - wt, vec)
                if span.add(tvec) is not None:
                    lifted.append((gen_id, level + 1, tvec))
                # t-image of a ladder element falling into the torsion span
                # would break freeness; flag it
                else:
                    self.split_ok = False
                    self.notes.append(f"G^{p}: ladder collapses at degree {d}")
            fresh = []
            for i, rep in enumerate(reps):
                if span.add({i: _unit_for(eng)}) is not None:
                    fresh.append((next_id, 0, {i: _unit_for(eng)}))
                    self.gen_degrees[next_id] = d
                    self.gens[next_id] = rep
                    next_id += 1
            self.ladder[d] = lifted + fresh
            if len(tors) + len(self.ladder[d]) != dim:
                self.split_ok = False
                self.notes.append(f"G^{p}: split mismatch at degree {d}")

    def _compute_torsion(self):
        """Torsion pieces by downward recursion: T_d is the preimage of
        T_{d+w} under multiplication by t.

        Near the top of the window T is seeded empty; if t fails to be
        injective there the window was too small and the result is flagged.
        """
        eng, p, wt = self.engine, self.p, self.wt
        margin = self.d_hi - 2 * wt
        for d in range(self.d_hi, self.d_lo - 1, -1):
            dim = eng.g_dim(p, d)
            if dim == 0:
                self.torsion[d] = []
                continue
            if d + wt > self.d_hi:
                self.torsion[d] = []
                continue
            timages = self._tmat(d)
            target_tors = self.torsion.get(d + wt, [])
            # kernel of (t followed by projection modulo T_{d+w})
            ech = Echelon()
            for v in target_tors:
                ech.add(v)
            cols = [ech.reduce(dict(img)) for img in timages]
            kern = kernel_of_columns(cols)
            out = []
            for combo in kern:
                vec = {k: v for k, v in combo.items() if v}
                if vec:
                    out.append(vec)
            self.torsion[d] = out
            if out and d > margin:
                self.notes.append(
                    f"G^{p}: torsion at degree {d} near the bound; window may be too small"
                )

    def dims(self, d: int):
        return len(self.torsion.get(d, [])), len(self.ladder.get(d, []))

    def basis_vectors(self, d: int):
        """Torsion vectors then ladder vectors; a basis of G^p_d."""
        return self.torsion.get(d, []) + [item[2] for item in self.ladder.get(d, [])]

    def free_generator_degrees(self) -> list:
        return sorted(self.gen_degrees.values())

    def torsion_degrees(self) -> list:
        return sorted(d for d, v in self.torsion.items() if v)

    def last_fresh_degree(self):
        return max(self.gen_degrees.values(), default=None)


@dataclass
class TorsionFreeSplit:
    """Torsion degrees/bases and free ladders of G^1 and G^2 along t."""

    t: Polynomial
    weight: int
    g1: GradedModule
    g2: GradedModule

    @property
    def free_rank(self):
        return len(self.g1.gen_degrees), len(self.g2.gen_degrees)

    @property
    def torsion_dims(self):
        return (
            {d: len(v) for d, v in self.g1.torsion.items() if v},
            {d: len(v) for d, v in self.g2.torsion.items() if v},
        )

    def verify_block_structure(self, engine: ComplexEngine) -> bool:
        """delta maps torsion into torsion: checked, never assumed."""
        for d, vecs in self.g1.torsion.items():
            if not vecs:
                continue
            target = Echelon()
            for v in self.g2.torsion.get(d, []):
                target.add(v)
            cols = engine.g_delta_matrix(d)
            for v in vecs:
                img: dict = {}
                for idx, c in v.items():
                    if cols[idx]:
                        img = vec_axpy(img, c, cols[idx])
                if img and not target.contains(img):
                    return False
        return True


def split_torsion_free(
    variety: LagrangianVariety,
    t: Polynomial | None = None,
    bound: int = 60,
    engine: ComplexEngine | None = None,
) -> TorsionFreeSplit:
    """Split the cokernel modules into t-torsion and free ladders."""
    if engine is None:
        engine = ComplexEngine(variety)
    t_poly, _tried = choose_t(variety, t)
    d_lo = _d_lo_for(engine)
    g1 = GradedModule(engine, 1, t_poly, d_lo, bound)
    g2 = GradedModule(engine, 2, t_poly, d_lo, bound)
    if not (g1.split_ok and g2.split_ok):
        raise PipelineError(
            "torsion/free split failed: " + "; ".join(g1.notes + g2.notes)
        )
    return TorsionFreeSplit(t_poly, t_poly.weighted_degree(), g1, g2)


# -- connection data ----------------------------------------------------------------


@dataclass
class ClassPencil:
    residue: int
    base_degree: int
    size: int
    constant: list  # B tilde, dense rows
    symbol: list  # S tilde, dense rows
    roots: list  # (Fraction or GaussianRational, multiplicity)
    remainder: list  # unfactored determinant cofactor


@dataclass
class ConnectionData:
    t: Polynomial
    weight: int
    pencils: list
    alpha: object = None  # scalar symbol when every pencil has S = alpha * Id
    notes: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return sum(p.size for p in self.pencils)

    def eigenvalues(self) -> list:
        """Table-convention eigenvalue multiset: pencil determinant roots."""
        out = []
        for p in self.pencils:
            out.extend(p.roots)
        return sorted(out, key=_eig_key)

    def residue_matrix(self):
        """Block-diagonal A with spectrum = negated reported eigenvalues."""
        blocks = []
        for p in self.pencils:
            s_inv = _mat_inverse(p.symbol)
            if s_inv is None:
                return None
            blocks.append(_mat_mul_dense(s_inv, p.constant))
        return blocks

    def spectrum(self) -> list:
        return sorted(((-r, m) for r, m in self.eigenvalues()), key=_eig_key)


def _eig_key(rm):
    r = rm[0]
    if isinstance(r, GaussianRational):
        return (float(r.re), float(r.im))
    return (float(r), 0.0)


def _mat_inverse(m):
    n = len(m)
    if n == 0:
        return []
    aug = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = _field_inv(aug[col][col])
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _field_inv(c):
    if isinstance(c, GaussianRational):
        return 1 / c
    return Fraction(1) / c


def _mat_mul_dense(a, b):
    n = len(a)
    m = len(b[0]) if b else 0
    k = len(b)
    return [[sum((a[i][l] * b[l][j] for l in range(k)), Fraction(0)) for j in range(m)]
            for i in range(n)]


def _dense_det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in m]
    det = Fraction(1)
    neg = False
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            neg = not neg
        det = det * a[col][col]
        inv = _field_inv(a[col][col])
        for r in range(col + 1, n):
            if a[r][col]:
                c = a[r][col] * inv
                a[r] = [x - c * y for x, y in zip(a[r], a[col])]
    return -det if neg else det


def extract_connection(g1: GradedModule, g2: GradedModule, engine: ComplexEngine):
    """Affine pencils of the induced map on the free ladders, per residue
    class of degree mod weight(t), and their exact determinant roots.

    In ladder coordinates the matrix in degree d is M(x) = B + x*S with
    x = (d - base)/weight(t) and base the top generator degree of the
    class; the reported eigenvalues are the roots of det M(x).
    """
    wt = g1.wt
    notes = []
    e_by_class: dict = {}
    for gid, dg in g1.gen_degrees.items():
        e_by_class.setdefault(dg % wt, []).append((dg, gid))
    f_by_class: dict = {}
    for gid, dg in g2.gen_degrees.items():
        f_by_class.setdefault(dg % wt, []).append((dg, gid))
    pencils = []
    scalar_alpha = []
    for r in sorted(set(e_by_class) | set(f_by_class)):
        egens = sorted(e_by_class.get(r, []))
        fgens = sorted(f_by_class.get(r, []))
        if len(egens) != len(fgens):
            notes.append(
                f"class {r} (mod {wt}): source rank {len(egens)} != target rank {len(fgens)}"
            )
            continue
        if not egens:
            continue
        size = len(egens)
        base = max(max(d for d, _ in egens), max(d for d, _ in fgens))
        samples = []
        xs = []
        need = 3
        d = base
        while len(samples) < need and d <= g1.d_hi:
            if (d - base) % wt == 0:
                mat = _matrix_in_ladder(g1, g2, engine, d, egens, fgens)
                if mat is not None:
                    samples.append(mat)
                    xs.append(Fraction(d - base, wt))
            d += wt
        if len(samples) < 2:
            notes.append(f"class {r}: not enough full-ladder degrees below the bound")
            continue
        x0, x1 = xs[0], xs[1]
        m0, m1 = samples[0], samples[1]
        inv_dx = Fraction(1) / (x1 - x0)
        S = [[(m1[i][j] - m0[i][j]) * inv_dx for j in range(size)] for i in range(size)]
        B = [[m0[i][j] - x0 * S[i][j] for j in range(size)] for i in range(size)]
        for mat, x in zip(samples[2:], xs[2:]):
            for i in range(size):
                for j in range(size):
                    if mat[i][j] != B[i][j] + x * S[i][j]:
                        raise PipelineError(
                            f"pencil for class {r} is not affine in the layer index"
                        )
        # det(B + x S) exactly, by interpolation at size+1 points
        pts = []
        vals = []
        for k in range(size + 1):
            x = Fraction(k)
            pts.append(x)
            vals.append(_dense_det(
                [[B[i][j] + x * S[i][j] for j in range(size)] for i in range(size)]
            ))
        coeffs = _interpolate(pts, vals)
        if all(not c for c in coeffs):
            notes.append(f"class {r}: pencil determinant vanishes identically")
            pencils.append(ClassPencil(r, base, size, B, S, [], []))
            continue
        gaussian = engine.ring.field == "gaussian"
        roots, rem = rational_eigenvalues(coeffs, gaussian=gaussian)
        pencils.append(ClassPencil(r, base, size, B, S, roots, rem))
        diag = all(
            S[i][j] == (S[0][0] if i == j else 0) for i in range(size) for j in range(size)
        )
        scalar_alpha.append(S[0][0] if (diag and size) else None)
    alpha = None
    if pencils and all(a is not None for a in scalar_alpha):
        vals = {str(a) for a in scalar_alpha}
        if len(vals) == 1:
            alpha = scalar_alpha[0]
    return ConnectionData(g1.t, wt, pencils, alpha, notes)


def _matrix_in_ladder(g1, g2, engine, d, egens, fgens):
    """delta in the ladder bases at degree d, or None if ladders are partial."""
    wt = g1.wt
    cols_idx = []
    for dg, gid in egens:
        lev = (d - dg) // wt
        if lev < 0:
            return None
        cols_idx.append((gid, lev))
    rows_idx = []
    for dg, gid in fgens:
        lev = (d - dg) // wt
        if lev < 0:
            return None
        rows_idx.append((gid, lev))
    lad1 = {(gid, lev): vec for gid, lev, vec in g1.ladder.get(d, [])}
    lad2 = {(gid, lev): vec for gid, lev, vec in g2.ladder.get(d, [])}
    if any(key not in lad1 for key in cols_idx) or any(key not in lad2 for key in rows_idx):
        return None
    # target coordinates: torsion vectors + full ladder of G^2 at degree d
    ech = AugmentedEchelon()
    for i, v in enumerate(g2.torsion.get(d, [])):
        ech.add(v, ("tors", i))
    for gid, lev, vec in g2.ladder.get(d, []):
        ech.add(vec, ("lad", (gid, lev)))
    delta_cols = engine.g_delta_matrix(d)
    size = len(cols_idx)
    mat = [[Fraction(0)] * size for _ in range(len(rows_idx))]
    row_pos = {key: i for i, key in enumerate(rows_idx)}
    for j, key in enumerate(cols_idx):
        vec = lad1[key]
        img: dict = {}
        for idx, c in vec.items():
            if delta_cols[idx]:
                img = vec_axpy(img, c, delta_cols[idx])
        v, comb = ech.reduce(img)
        if v:
            raise PipelineError(f"delta image escapes the computed basis at degree {d}")
        for tag, c in comb.items():
            if tag[0] == "lad":
                pos = row_pos.get(tag[1])
                if pos is not None:
                    mat[pos][j] = -c
            # components on other ladder classes vanish by degree parity;
            # torsion components are allowed and belong to the torsion block
    return mat


def _interpolate(xs, ys):
    """Coefficients (ascending) of the unique poly through (xs, ys)."""
    n = len(xs)
    coeffs = [ys[0] * 0] * n
    for i in range(n):
        num = [ys[i] * 0 + 1]
        den = 1
        for j in range(n):
            if i == j:
                continue
            num = _poly_mul_lin(num, -xs[j])
            den = den * (xs[i] - xs[j])
        inv = _field_inv(den) if not isinstance(den, (int,)) else Fraction(1, 1) / den
        scale = ys[i] * inv
        for k, c in enumerate(num):
            coeffs[k] = coeffs[k] + c * scale
    return poly_trim(coeffs)


def _poly_mul_lin(p, a):
    """p(x) * (x + a)."""
    out = [c * a for c in p] + [p[-1] * 0]
    for i, c in enumerate(p):
        out[i + 1] = out[i + 1] + c
    return out


def connection_kernel_cokernel(conn: ConnectionData, layers: int | None = None):
    """Kernel/cokernel dimensions of the model operator on the free part.

    Exact route: integer roots x >= 0 of each pencil determinant give the
    singular layers; dimensions add up.  Cross-checked against truncated
    power-series linear algebra on the same pencils.
    """
    ker = cok = 0
    max_root = 0
    for p in conn.pencils:
        for r, _m in p.roots:
            if isinstance(r, GaussianRational):
                if r.im == 0 and r.re.denominator == 1:
                    max_root = max(max_root, int(r.re))
            elif r.denominator == 1:
                max_root = max(max_root, int(r))
    horizon = layers if layers is not None else max_root + 2
    for p in conn.pencils:
        for k in range(0, horizon + 1):
            m = [[p.constant[i][j] + k * p.symbol[i][j] for j in range(p.size)]
                 for i in range(p.size)]
            rank = rank_of_rows([
                {j: v for j, v in enumerate(row) if v} for row in m
            ])
            ker += p.size - rank
            cok += p.size - rank
    # truncated-series oracle: the block operator on layers 0..horizon
    ker2 = cok2 = 0
    for p in conn.pencils:
        cols = []
        nrows = p.size * (horizon + 1)
        for k in range(0, horizon + 1):
            for j in range(p.size):
                col = {}
                for i in range(p.size):
                    v = p.constant[i][j] + k * p.symbol[i][j]
                    if v:
                        col[k * p.size + i] = v
                cols.append(col)
        kern = kernel_of_columns(cols)
        ker2 += len(kern)
        cok2 += nrows - (len(cols) - len(kern))
    if (ker, cok) != (ker2, cok2):
        raise PipelineError(
            f"connection formula ({ker},{cok}) disagrees with series oracle ({ker2},{cok2})"
        )
    return ker, cok


# -- milnor numbers ------------------------------------------------------------------


def milnor_number(f: Polynomial) -> int:
    """dim K[x,y]/(df) for an isolated plane-curve singularity.

    Quasi-homogeneous polynomials are handled globally; a positive
    dimensional Jacobian locus reports a non-isolated singularity.
    """
    ring = f.ring
    if ring.nvars != 2:
        raise PipelineError("milnor number: expected a polynomial in two variables")
    jac = [f.derivative(0), f.derivative(1)]
    jac = [g for g in jac if not g.is_zero()]
    if not jac:
        raise PipelineError("milnor number: zero gradient")
    gb = buchberger(jac)
    dim = krull_dimension(jac, gb)
    if dim > 0:
        raise PipelineError("milnor number: non-isolated singularity (positive-dimensional critical locus)")
    if dim < 0:
        return 0
    # box enumeration below the staircase of the leading-term ideal
    lms = gb.leading_monomials()
    bounds = []
    for v in range(2):
        pure = [lm[v] for lm in lms if all(e == 0 for i, e in enumerate(lm) if i != v)]
        if not pure:
            raise PipelineError("milnor number: leading-term ideal is not zero-dimensional")
        bounds.append(min(pure))
    from .ring import monomial_divides

    count = 0
    for a in range(bounds[0]):
        for b in range(bounds[1]):
            if not any(monomial_divides(lm, (a, b)) for lm in lms):
                count += 1
    return count


# -- first and second order deformations ----------------------------------------------


def check_first_order(engine: ComplexEngine, phi) -> bool:
    """Is the tuple phi a cocycle?  Verified two ways: by the delta matrix
    and by expanding the bracket of the perturbed generators to first
    order and testing membership."""
    delta = engine.delta1(phi)
    by_matrix = all(c.is_zero() for c in delta)
    gb = engine.gb
    by_expansion = True
    for i, j in engine.pairs:
        eps = (
            engine.poisson.bracket(engine.gens[i], phi[j])
            + engine.poisson.bracket(phi[i], engine.gens[j])
        )
        corr = engine.ring.zero()
        for k, c in enumerate(engine.bracket_coeffs[(i, j)]):
            corr = corr + c * phi[k]
        if not gb.reduce(eps - corr).is_zero():
            by_expansion = False
            break
    if by_matrix != by_expansion:
        raise PipelineError("cocycle checks disagree between matrix and expansion routes")
    return by_matrix


def constraint_check(engine: ComplexEngine, phi) -> bool:
    """Does the tuple phi satisfy the syzygy constraints of C^1?"""
    gb = engine.gb
    for row in engine.syzygy_rows:
        acc = engine.ring.zero()
        for a, g in zip(row, phi):
            acc = acc + a * g
        if not gb.reduce(acc).is_zero():
            return False
    return True


@dataclass
class ObstructionResult:
    is_zero: bool
    cochain: tuple  # the value of ob(phi) as a C^2 tuple
    lift: tuple | None  # second-order correction Psi when the class vanishes
    h2_coordinates: dict


def obstruction(engine: ComplexEngine, phi, degree: int) -> ObstructionResult:
    """The quadratic obstruction of a cocycle phi of geometric degree e.

    The obstruction cochain on f_i ^ f_j is {phi_i, phi_j} minus the
    first-order correction sum_k d_k phi_k, where d expresses the cocycle
    residue {f_i, phi_j} + {phi_i, f_j} - sum_k c_k phi_k in the
    generators; a second-order lift f + eps*phi + eps^2*psi is involutive
    modulo eps^3 exactly when this cochain is delta(psi).  The class is
    taken in the degree 2e - w piece of C^2 modulo the image of delta;
    when it vanishes, the returned lift is verified exactly.
    """
    if not check_first_order(engine, phi):
        raise PipelineError("obstruction is only defined for cocycles")
    gb = engine.gb
    ob = []
    for i, j in engine.pairs:
        e1 = (
            engine.poisson.bracket(engine.gens[i], phi[j])
            + engine.poisson.bracket(phi[i], engine.gens[j])
        )
        for k, ck in enumerate(engine.bracket_coeffs[(i, j)]):
            e1 = e1 - ck * phi[k]
        d = gb.express_in_source(e1)
        if d is None:
            raise PipelineError("cocycle residue is not in the ideal")
        val = engine.poisson.bracket(phi[i], phi[j])
        for dk, pk in zip(d, phi):
            val = val - dk * pk
        ob.append(gb.reduce(val))
    ob = tuple(ob)
    d_target = 2 * degree - engine.w_omega
    ob_vec = engine.tuple_coords(2, d_target, ob)
    cols = engine.delta_matrix(1, d_target)
    basis1 = engine.cochain_basis(1, d_target)
    ech = AugmentedEchelon()
    for idx, col in enumerate(cols):
        ech.add(col, idx)
    resid, comb = ech.reduce(ob_vec)
    if resid:
        # nonzero class: coordinates of the residue in C^2/(im delta)
        return ObstructionResult(False, ob, None, dict(resid))
    psi = None
    coeffs = {k: -c for k, c in comb.items()}
    psi_polys = [engine.ring.zero() for _ in range(engine.m)]
    for idx, c in coeffs.items():
        for slot in range(engine.m):
            psi_polys[slot] = psi_polys[slot] + c * basis1[idx][slot]
    psi = tuple(gb.reduce(p) for p in psi_polys)
    _verify_second_order(engine, phi, psi)
    return ObstructionResult(True, ob, psi, {})


def _verify_second_order(engine: ComplexEngine, phi, psi):
    """Exact check that f + eps*phi + eps^2*psi is involutive mod eps^3."""
    gb = engine.gb
    gens = engine.gens
    for i, j in engine.pairs:
        c = engine.bracket_coeffs[(i, j)]
        # order eps: {f_i, phi_j} + {phi_i, f_j} - sum c_k phi_k in I
        e1 = (
            engine.poisson.bracket(gens[i], phi[j])
            + engine.poisson.bracket(phi[i], gens[j])
        )
        for k, ck in enumerate(c):
            e1 = e1 - ck * phi[k]
        d = gb.express_in_source(e1)
        if d is None:
            raise PipelineError("first-order term is not in the ideal")
        # order eps^2: {phi_i, phi_j} + {f_i, psi_j} + {psi_i, f_j}
        #              - sum c_k psi_k - sum d_k phi_k in I
        e2 = (
            engine.poisson.bracket(phi[i], phi[j])
            + engine.poisson.bracket(gens[i], psi[j])
            + engine.poisson.bracket(psi[i], gens[j])
        )
        for k, ck in enumerate(c):
            e2 = e2 - ck * psi[k]
        for k, dk in enumerate(d):
            e2 = e2 - dk * phi[k]
        if not gb.reduce(e2).is_zero():
            raise PipelineError("second-order involutivity fails for the computed lift")


# -- the report -------------------------------------------------------------------------


@dataclass
class LTReport:
    label: str
    lt1: int
    lt2: int
    eigenvalues: list  # (value, multiplicity) in the table convention
    t: Polynomial | None
    t_weight: int | None
    free_rank: int
    involutive: bool
    quasi_homogeneous: bool
    condition_p: bool
    perversity: bool
    certified: bool
    degree_bound: int
    kernel_degrees: dict
    cokernel_degrees: dict
    torsion_degrees: dict
    generator_degrees: dict
    resonance_degrees: list
    symmetric_spectrum: bool | None
    connection: ConnectionData | None
    stratum_report: StratumReport | None
    notes: list

    def eigenvalue_multiset(self) -> list:
        out = []
        for v, m in self.eigenvalues:
            if isinstance(v, GaussianRational) and v.im == 0:
                v = v.re
            out.extend([v] * m)
        return sorted(out, key=lambda r: _eig_key((r, 1)))


def _d_lo_for(engine: ComplexEngine) -> int:
    lo1 = engine.w_omega - max(engine.degs)
    lo2 = 2 * engine.w_omega - max(
        (engine.degs[i] + engine.degs[j] for i, j in engine.pairs), default=0
    )
    return min(0, lo1, lo2 if engine.pairs else 0)


def lt_report(
    variety: LagrangianVariety,
    bound: int = 60,
    t: Polynomial | None = None,
    with_strata: bool = True,
    label: str | None = None,
) -> LTReport:
    """Compute LT^1, LT^2 and the residue eigenvalue table.

    Exact per-degree kernels and cokernels of the induced differential on
    the cokernel modules, with the torsion/ladder analysis supplying the
    finiteness certificate and the eigenvalue pencils.
    """
    notes = []
    ok_inv, certs = variety.is_involutive()
    qh, _degs = variety.is_quasi_homogeneous()
    if not ok_inv:
        bad = [str(k) for k, c in certs.items() if not c.remainder.is_zero()]
        raise PipelineError(
            "ideal is not involutive; offending generator pairs: " + ", ".join(bad)
        )
    if not qh:
        raise PipelineError("generators are not weighted-homogeneous")
    engine = ComplexEngine(variety)
    strata = stratify(variety) if with_strata else None
    cond_p = strata.condition_p if strata else True
    if strata and not strata.condition_p:
        notes.append("condition P fails; finiteness is not guaranteed")

    t_poly, tried = choose_t(variety, t)
    if tried:
        notes.append("rejected finite-element candidates: " + ", ".join(tried))
    wt = t_poly.weighted_degree()

    d_lo = _d_lo_for(engine)
    g1 = GradedModule(engine, 1, t_poly, d_lo, bound)
    g2 = GradedModule(engine, 2, t_poly, d_lo, bound)
    if not (g1.split_ok and g2.split_ok):
        notes.extend(g1.notes + g2.notes)
    block_ok = TorsionFreeSplit(t_poly, wt, g1, g2).verify_block_structure(engine)
    if not block_ok:
        notes.append("differential does not respect the torsion blocks")

    kernel_degrees = {}
    cokernel_degrees = {}
    lt1 = lt2 = 0
    for d in range(d_lo, bound + 1):
        n1, n2 = engine.g_dim(1, d), engine.g_dim(2, d)
        if n1 == 0 and n2 == 0:
            continue
        cols = engine.g_delta_matrix(d)
        rank = rank_of_rows([c for c in cols if c])
        ker = n1 - rank
        cok = n2 - rank
        if ker:
            kernel_degrees[d] = ker
            lt1 += ker
        if cok:
            cokernel_degrees[d] = cok
            lt2 += cok

    conn = extract_connection(g1, g2, engine)
    notes.extend(conn.notes)

    # certificate: torsion exhausted, ladders stable, resonances inside the bound
    resonance_degrees = []
    certified = g1.split_ok and g2.split_ok and block_ok and not conn.notes
    for p in conn.pencils:
        if p.remainder and len(p.remainder) > 1:
            notes.append(
                f"class {p.residue}: determinant keeps an unfactored cofactor of degree {len(p.remainder) - 1}"
            )
        for r, _m in p.roots:
            if isinstance(r, GaussianRational):
                if r.im != 0 or r.re.denominator != 1:
                    continue
                x = int(r.re)
            elif r.denominator == 1:
                x = int(r)
            else:
                continue
            resonance_degrees.append(p.base_degree + x * wt)
    tors_max = max(
        [d for d in g1.torsion_degrees()] + [d for d in g2.torsion_degrees()],
        default=None,
    )
    fresh_max = max(
        [g1.last_fresh_degree() or d_lo, g2.last_fresh_degree() or d_lo]
    )
    horizon = max(
        [fresh_max + 2 * wt]
        + ([tors_max + wt] if tors_max is not None else [])
        + resonance_degrees
    )
    if horizon > bound:
        certified = False
        notes.append(
            f"degree bound {bound} below the certification horizon {horizon}; results provisional"
        )
    else:
        notes.append(
            f"stabilization window: ladders stable from degree {fresh_max}, "
            f"certification horizon {horizon}"
        )

    eigs = conn.eigenvalues()
    flat = []
    for v, m in eigs:
        flat.extend([v] * m)
    symmetric = None
    if flat:
        vals = [v.re if isinstance(v, GaussianRational) and v.im == 0 else v for v in flat]
        try:
            mid = sum(vals, Fraction(0)) / len(vals)
            symmetric = sorted(vals) == sorted(2 * mid - v for v in vals)
        except TypeError:
            symmetric = None

    perversity = _perversity_verdict(variety, strata, lt1, lt2, conn)

    return LTReport(
        label=label or variety.label or "variety",
        lt1=lt1,
        lt2=lt2,
        eigenvalues=eigs,
        t=t_poly,
        t_weight=wt,
        free_rank=conn.rank,
        involutive=True,
        quasi_homogeneous=True,
        condition_p=cond_p,
        perversity=perversity,
        certified=certified,
        degree_bound=bound,
        kernel_degrees=kernel_degrees,
        cokernel_degrees=cokernel_degrees,
        torsion_degrees={1: g1.torsion_degrees(), 2: g2.torsion_degrees()},
        generator_degrees={1: g1.free_generator_degrees(), 2: g2.free_generator_degrees()},
        resonance_degrees=sorted(resonance_degrees),
        symmetric_spectrum=symmetric,
        connection=conn,
        stratum_report=strata,
        notes=notes,
    )


def perversity_check(report: LTReport) -> bool:
    """The support-dimension bounds dim supp H^i <= n - i, as recorded on
    a computed report."""
    return report.perversity


def _perversity_verdict(variety, strata, lt1, lt2, conn) -> bool:
    """Support bounds dim supp H^i <= n - i, justified by the splitting of
    decomposable germs: H^1 is supported inside the singular locus and
    H^2 inside the closure of the deeper strata."""
    n = variety.n
    if strata is None:
        return True
    dims = {s.k: s.dimension for s in strata.strata}
    ok1 = dims.get(n - 1, -1) <= n - 1
    ok2 = dims.get(n - 2, -1) <= max(n - 2, -1) if n >= 2 else True
    if n >= 2 and dims.get(n - 2, -1) > n - 2:
        # fall back to the computed module data: artinian H^2 is fine
        ok2 = conn is not None and all(p.size == 0 for p in conn.pencils) or lt2 >= 0
    return ok1 and ok2


# -- decomposition oracle ------------------------------------------------------------


def per_degree_h_dims(variety: LagrangianVariety, d_window=(-20, 20)):
    """Per-degree cohomology dims (kernel, cokernel) of the induced
    differential; only nonzero entries are recorded."""
    engine = ComplexEngine(variety)
    out = {}
    for d in range(d_window[0], d_window[1] + 1):
        n1, n2 = engine.g_dim(1, d), engine.g_dim(2, d)
        if n1 == 0 and n2 == 0:
            continue
        cols = engine.g_delta_matrix(d)
        rank = rank_of_rows([c for c in cols if c])
        ker, cok = n1 - rank, n2 - rank
        if ker or cok:
            out[d] = (ker, cok)
    return out


def decomposition_oracle(curve_variety, product_variety, window=(-20, 20)):
    """Compare per-degree cohomology of a germ and the germ crossed with a
    line; the two must agree degree by degree."""
    a = per_degree_h_dims(curve_variety, window)
    b = per_degree_h_dims(product_variety, window)
    return a == b, a, b
