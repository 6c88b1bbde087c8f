"""Constructors for the example families: open swallowtails, conormal
spaces of plane curves, resonant integrable systems, and products with a
smooth line."""

from __future__ import annotations

import time
from fractions import Fraction
from math import factorial

from .fields import GAUSSIAN
from .groebner import (
    buchberger,
    eliminate,
    krull_dimension,
    restrict,
    saturate,
)
from .orders import WGrevLex
from .ring import Polynomial, WeightedRing, z_substitution
from .symplectic import LagrangianVariety, PoissonStructure


class FamilyError(ValueError):
    pass


def swallowtail_ring(k: int) -> WeightedRing:
    names = [chr(ord("A") + i - 2) if k == 2 else f"A{i}" for i in range(2, 2 * k + 2)]
    weights = list(range(2, 2 * k + 2))
    return WeightedRing(names, weights)


def swallowtail_pairs(ring: WeightedRing, k: int) -> list:
    """Darboux pairs for the coefficient space of degree-(2k+1) polynomials.

    Half the factorial two-form; at k = 2 this is 3 dA^dD + dC^dB.
    """
    pairs = []
    for i in range(2, k + 2):
        c = Fraction(factorial(2 * k + 1 - i) * factorial(i - 2), 2)
        if i % 2:
            c = -c
        a = ring.variables[i - 2]
        b = ring.variables[2 * k + 3 - i - 2]
        if c > 0:
            pairs.append((a, b, c))
        else:
            pairs.append((b, a, -c))
    return pairs


def open_swallowtail(k: int, timeout_s: float | None = None) -> LagrangianVariety:
    """The space of degree-(2k+1) monic polynomials with zero root sum and
    a root of multiplicity at least k+1, by parameter elimination.

    k = 1 and 2 are fast; beyond that the elimination cost grows quickly,
    so a timeout (seconds) can bound the attempt.
    """
    if k < 1:
        raise FamilyError("k must be at least 1")
    ring = swallowtail_ring(k)
    # parameters: the multiple root a and the cofactor coefficients b_2..b_k
    pnames = ["a"] + [f"b{j}" for j in range(2, k + 1)]
    pweights = [1] + list(range(2, k + 1))
    ext = ring.extend(pnames, pweights, prepend=True)
    a = ext.variable("a")
    # (x - a)^(k+1) * (x^k + (k+1) a x^(k-1) + b_2 x^(k-2) + ... + b_k)
    # has zero coefficient at x^(2k); expand in an auxiliary variable.
    work = ext.extend(["x"], [1], prepend=True)
    xv = work.variable("x")
    lead = (xv - a.map_to(work)) ** (k + 1)
    cof = xv ** k + (k + 1) * a.map_to(work) * xv ** (k - 1)
    for j in range(2, k + 1):
        cof = cof + ext.variable(f"b{j}").map_to(work) * xv ** (k - j)
    prod = lead * cof
    # collect coefficients of x^(2k+1-i) for i = 2..2k+1
    coeff = {}
    xi = work.var_index("x")
    for mon, c in prod.terms.items():
        e = mon[xi]
        rest = list(mon)
        rest[xi] = 0
        coeff.setdefault(e, []).append((tuple(rest), c))
    gens = []
    for i in range(2, 2 * k + 2):
        e = 2 * k + 1 - i
        expr = Polynomial(work, dict(coeff.get(e, [])))
        gens.append(ext.variable(ring.variables[i - 2]).map_to(work) - expr)
    sumroot = Polynomial(work, dict(coeff.get(2 * k, [])))
    if not sumroot.is_zero():
        raise FamilyError("root-sum normalization failed")
    lowered = [restrict(g, ext) for g in gens]
    deadline = time.monotonic() + timeout_s if timeout_s is not None else None
    elim = eliminate(lowered, pnames, inner_order=WGrevLex(ext.weights), deadline=deadline)
    ideal = [restrict(g, ring) for g in elim]
    poisson = PoissonStructure(ring, swallowtail_pairs(ring, k))
    return LagrangianVariety(poisson, ideal, label=f"swallowtail_{k}")


def swallowtail_normalization(k: int = 2):
    """The parametrization of the k = 2 swallowtail by (a, b)."""
    if k != 2:
        raise FamilyError("normalization map is recorded for k = 2 only")
    ring = WeightedRing(["a", "b"], [1, 2])
    a, b = ring.gens()
    return ring, [b - 6 * a ** 2, 8 * a ** 3 - 3 * a * b, 3 * a ** 2 * b - 3 * a ** 4, -(a ** 3) * b]


def quasi_homogeneous_weights_2d(f: Polynomial):
    """Positive integer weights (wx, wy) making f homogeneous, or None."""
    exps = list(f.terms)
    if len(exps) == 1:
        return (1, 1)
    # solve (a_i - a_0) wx + (b_i - b_0) wy = 0 over the exponents
    a0, b0 = exps[0]
    da, db = None, None
    for a, b in exps[1:]:
        ra, rb = a - a0, b - b0
        if ra == 0 and rb == 0:
            continue
        if da is None:
            da, db = ra, rb
            continue
        if ra * db != rb * da:
            return None
    if da is None:
        return (1, 1)
    wx, wy = abs(db), abs(da)
    if wx == 0 or wy == 0:
        return None
    if da * wx + db * wy != 0:
        wy = -wy
    if da * wx + db * wy != 0:
        return None
    if wx <= 0 or wy <= 0:
        return None
    from math import gcd

    g = gcd(wx, wy)
    return (wx // g, wy // g)


def conormal_variety(f_text: str, label: str | None = None):
    """Closure of the conormal space of a plane curve in T*K^2.

    Weights: (wx, wy) from the quasi-homogeneity of f, and xi, eta paired
    so the symplectic form has weight deg(f).  Returns the variety plus a
    flag marking a smooth curve (trivial conormal).
    """
    probe = WeightedRing(["x", "y"], [1, 1])
    f0 = probe.parse(f_text)
    w = quasi_homogeneous_weights_2d(f0)
    homogeneous = True
    if w is not None:
        wx, wy = w
        plain = WeightedRing(["x", "y"], [wx, wy])
        f = plain.parse(f_text)
        d = f.weighted_degree()
        wxi, weta = d - wx, d - wy
        if wxi <= 0 or weta <= 0:
            # essentially smooth curve: no positive cotangent grading exists
            homogeneous = False
    else:
        homogeneous = False
    if not homogeneous:
        wx = wy = wxi = weta = 1
    ring = WeightedRing(["x", "y", "xi", "eta"], [wx, wy, wxi, weta])
    aux = ring.extend(["lam"], [1], prepend=True)
    fa = f.map_to(aux)
    fx, fy = fa.derivative("x"), fa.derivative("y")
    pre = [
        fa,
        aux.variable("xi") - aux.variable("lam") * fx,
        aux.variable("eta") - aux.variable("lam") * fy,
    ]
    elim = [restrict(g, ring) for g in eliminate(pre, ["lam"], inner_order=WGrevLex(aux.weights))]
    fxr = f.map_to(ring).derivative("x")
    fyr = f.map_to(ring).derivative("y")
    sing_dim = krull_dimension([f.map_to(ring), fxr, fyr])
    smooth = sing_dim < 0
    sat = saturate(elim, [g for g in (fxr, fyr) if not g.is_zero()])
    gens = list(buchberger(sat).polys)
    poisson = PoissonStructure(ring, [("xi", "x", 1), ("eta", "y", 1)])
    variety = LagrangianVariety(poisson, gens, label=label or f"conormal({f_text})")
    return variety, smooth


def resonance_identity(lam: int, mu: int, e) -> int:
    """The commuting combination for f = lam z1 zbar1 + mu z2 zbar2 against
    the monomial with exponents e = (alpha, beta, gamma, delta)."""
    alpha, beta, gamma, delta = e
    return lam * (alpha - beta) + mu * (gamma - delta)


def resonance_system(
    lam: int, mu: int, e, label: str | None = None, symmetrize: bool = True
) -> LagrangianVariety:
    """Poisson-commuting pair over Q(i): the real quadric f and the
    resonant monomial in z1, zbar1, z2, zbar2 with exponents e.

    With ``symmetrize`` (the default) the monomial is replaced by its real
    combination z^e + conj(z^e); both commute with f, but only the real
    form defines a reduced fiber, which is what the deformation machinery
    needs (the bare monomial squares a component whenever an exponent
    exceeds one, and the cohomology then grows in every degree).
    """
    alpha, beta, gamma, delta = e
    if min(alpha, beta, gamma, delta) < 0 or lam < 0 or mu < 0:
        raise FamilyError("resonance data must be non-negative integers")
    if resonance_identity(lam, mu, e) != 0:
        raise FamilyError(
            f"non-commuting data: lam*(alpha-beta) + mu*(gamma-delta) = "
            f"{resonance_identity(lam, mu, e)} != 0"
        )
    ring = WeightedRing(["p1", "q1", "p2", "q2"], [1, 1, 1, 1], field=GAUSSIAN)
    zp = [("p1", "q1"), ("p2", "q2")]
    f = lam * z_substitution(ring, zp, [1, 1, 0, 0]) + mu * z_substitution(ring, zp, [0, 0, 1, 1])
    g = z_substitution(ring, zp, [alpha, beta, gamma, delta])
    conj_e = (beta, alpha, delta, gamma)
    if symmetrize and conj_e != tuple(e):
        g = g + z_substitution(ring, zp, list(conj_e))
    poisson = PoissonStructure(ring, [("p1", "q1", 1), ("p2", "q2", 1)])
    br = poisson.bracket(f, g)
    if not br.is_zero():
        raise FamilyError("generators do not Poisson-commute")
    variety = LagrangianVariety(
        poisson, [f, g], label=label or f"resonance({lam},{mu};{alpha},{beta},{gamma},{delta})"
    )
    # complete intersection when the zero set has the right dimension
    variety.complete_intersection = krull_dimension([f, g]) == 2
    return variety


def product_with_line(variety: LagrangianVariety, names=("s_", "t_")) -> LagrangianVariety:
    """Adjoin a Darboux pair (s, t) and the generator s: the germ crossed
    with a smooth line, graded so the new pair has the form's weight."""
    ring = variety.ring
    w = variety.poisson.degree_shift()
    sname, tname = names
    while sname in ring.variables:
        sname += "_"
    while tname in ring.variables:
        tname += "_"
    if w < 2:
        raise FamilyError("the symplectic weight must be at least 2 to grade the new pair")
    ext = ring.extend([sname, tname], [w - 1, 1])
    pairs = []
    for p, q, c in variety.poisson.pairs:
        pairs.append((ring.variables[p], ring.variables[q], c))
    pairs.append((sname, tname, 1))
    poisson = PoissonStructure(ext, pairs)
    gens = [g.map_to(ext) for g in variety.generators] + [ext.variable(sname)]
    return LagrangianVariety(poisson, gens, label=(variety.label or "germ") + " x line")


def plane_curve_variety(f_text: str, weights=None, label: str | None = None) -> LagrangianVariety:
    """A plane curve as a lagrangian variety in (K^2, dx ^ dy)."""
    probe = WeightedRing(["x", "y"], [1, 1])
    f0 = probe.parse(f_text)
    if weights is None:
        weights = quasi_homogeneous_weights_2d(f0)
        if weights is None:
            raise FamilyError("the curve is not quasi-homogeneous; pass weights explicitly")
    ring = WeightedRing(["x", "y"], list(weights))
    poisson = PoissonStructure(ring, [("x", "y", 1)])
    return LagrangianVariety(poisson, [ring.parse(f_text)], label=label or f"curve({f_text})")
