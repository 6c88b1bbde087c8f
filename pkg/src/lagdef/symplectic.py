"""Constant-coefficient Poisson structures from Darboux-style pairings.

The symplectic form is given as omega = sum_k c_k dp_k ^ dq_k; the
corresponding bracket is

    {f, g} = SIGN * sum_k (1/c_k) (df/dp_k dg/dq_k - df/dq_k dg/dp_k).

SIGN is a build-time constant calibrated so that the open-swallowtail
commutator identities hold exactly as printed; it is not user-visible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .fields import GaussianRational, coerce_scalar
from .groebner import GroebnerBasis, buchberger, default_order
from .ring import Polynomial, RingError, WeightedRing

BRACKET_SIGN = 1


class SymplecticError(ValueError):
    pass


class PoissonStructure:
    """Pairs (p, q, c) with omega = sum c * dp ^ dq, nondegenerate."""

    def __init__(self, ring: WeightedRing, pairs: Sequence):
        self.ring = ring
        norm = []
        seen = set()
        for entry in pairs:
            p, q, c = entry
            pi, qi = ring.var_index(p), ring.var_index(q)
            c = coerce_scalar(c, ring.field)
            if not c:
                raise SymplecticError(f"zero coefficient on pair ({p},{q})")
            if pi in seen or qi in seen or pi == qi:
                raise SymplecticError(f"variable reused in pair ({p},{q})")
            seen.update((pi, qi))
            norm.append((pi, qi, c))
        if len(seen) != ring.nvars:
            missing = [v for i, v in enumerate(ring.variables) if i not in seen]
            raise SymplecticError(f"unpaired variables: {', '.join(missing)}")
        if ring.nvars % 2:
            raise SymplecticError("symplectic space needs an even number of variables")
        self.pairs = tuple(norm)

    @property
    def n(self) -> int:
        return self.ring.nvars // 2

    def degree_shift(self) -> int:
        """The constant w with deg{a,b} = deg a + deg b - w, for omega
        homogeneous; raises when the pair weights disagree."""
        w = self.ring.weights
        sums = {w[p] + w[q] for p, q, _c in self.pairs}
        if len(sums) != 1:
            raise SymplecticError(f"omega is not weighted-homogeneous: pair weights {sorted(sums)}")
        return next(iter(sums))

    def bracket(self, f: Polynomial, g: Polynomial) -> Polynomial:
        if f.ring != self.ring or g.ring != self.ring:
            raise RingError("bracket arguments must live in the structure's ring")
        acc = self.ring.zero()
        for p, q, c in self.pairs:
            fp, fq = f.derivative(p), f.derivative(q)
            gp, gq = g.derivative(p), g.derivative(q)
            term = fp * gq - fq * gp
            if not term.is_zero():
                acc = acc + term * _inv(c)
        return acc * BRACKET_SIGN

    def bracket_with_grads(self, f_grads, g: Polynomial) -> Polynomial:
        """Bracket with the first argument's gradients precomputed."""
        acc = self.ring.zero()
        for (p, q, c), (fp, fq) in zip(self.pairs, f_grads):
            term = fp * g.derivative(q) - fq * g.derivative(p)
            if not term.is_zero():
                acc = acc + term * _inv(c)
        return acc * BRACKET_SIGN

    def grads(self, f: Polynomial):
        return [(f.derivative(p), f.derivative(q)) for p, q, _c in self.pairs]

    def hamiltonian_field(self, h: Polynomial) -> list:
        """Components H_i, one per ring variable, with sum H_i d_i(g) = {h, g}."""
        comps = [self.ring.zero() for _ in range(self.ring.nvars)]
        for p, q, c in self.pairs:
            inv = _inv(c)
            comps[q] = comps[q] + h.derivative(p) * inv * BRACKET_SIGN
            comps[p] = comps[p] - h.derivative(q) * inv * BRACKET_SIGN
        return comps

    def apply_field(self, comps, g: Polynomial) -> Polynomial:
        acc = self.ring.zero()
        for i, h in enumerate(comps):
            if not h.is_zero():
                acc = acc + h * g.derivative(i)
        return acc


def _inv(c):
    if isinstance(c, GaussianRational):
        return 1 / c
    return Fraction(1) / c


class LagrangianVariety:
    """A symplectic coordinate space plus an involutive ideal.

    Holds the generators, the Poisson structure, and cached Groebner data.
    Involutivity and homogeneity are checked on demand, not at build time.
    """

    def __init__(self, poisson: PoissonStructure, generators: Sequence[Polynomial], label: str = ""):
        self.poisson = poisson
        self.ring = poisson.ring
        gens = [g for g in generators if not g.is_zero()]
        if not gens:
            raise ValueError("the ideal needs at least one nonzero generator")
        for g in gens:
            if g.ring != self.ring:
                raise RingError("generator outside the ambient ring")
        self.generators = list(gens)
        self.label = label
        self._gb = None
        self._gb_ext = None
        self._gb_sq = None

    @property
    def n(self) -> int:
        return self.poisson.n

    def groebner(self, extended: bool = False) -> GroebnerBasis:
        if extended:
            if self._gb_ext is None:
                self._gb_ext = buchberger(self.generators, default_order(self.ring), extended=True)
            return self._gb_ext
        if self._gb is None:
            if self._gb_ext is not None:
                self._gb = self._gb_ext
            else:
                self._gb = buchberger(self.generators, default_order(self.ring))
        return self._gb

    def groebner_square(self) -> GroebnerBasis:
        if self._gb_sq is None:
            from .groebner import ideal_square

            self._gb_sq = buchberger(ideal_square(self.generators), default_order(self.ring))
        return self._gb_sq

    def degrees(self) -> list:
        return [g.weighted_degree() for g in self.generators]

    def is_quasi_homogeneous(self):
        from .ring import is_quasi_homogeneous

        return is_quasi_homogeneous(self.generators)

    def involutivity_certificates(self) -> dict:
        """Normal-form certificates for every bracket {f_i, f_j}, i < j."""
        gb = self.groebner()
        out = {}
        for i in range(len(self.generators)):
            for j in range(i + 1, len(self.generators)):
                br = self.poisson.bracket(self.generators[i], self.generators[j])
                out[(i, j)] = gb.normal_form(br, want_certificate=True)
        return out

    def is_involutive(self):
        certs = self.involutivity_certificates()
        ok = all(c.remainder.is_zero() for c in certs.values())
        return ok, certs


def is_involutive(variety: LagrangianVariety):
    return variety.is_involutive()
