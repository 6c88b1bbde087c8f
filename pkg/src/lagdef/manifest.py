"""Manifest files: a sectioned key-value format describing the ambient
space, symplectic pairs, ideal generators, and compute options.

    [space]
    variables = A B C D
    weights = 2 3 4 5
    field = rational

    [symplectic]
    pairs = [["A","D",3],["C","B",1]]

    [ideal]
    f1 = -27*B^2*C+96*A*C^2-45*A*B*D+1125*D^2

    [compute]
    degree_bound = 60
    t = A

Parsing collects every error instead of stopping at the first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .fields import GAUSSIAN, RATIONAL
from .ring import ParseError, WeightedRing
from .symplectic import LagrangianVariety, PoissonStructure, SymplecticError


class ManifestError(ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass
class Manifest:
    variables: list
    weights: list
    field: str
    pairs: list  # [name_p, name_q, coefficient] triples
    generators: list  # (name, text)
    degree_bound: int = 60
    t: str | None = None
    checks: dict = field(default_factory=dict)
    label: str = ""

    def ring(self) -> WeightedRing:
        return WeightedRing(self.variables, self.weights, self.field)

    def variety(self) -> LagrangianVariety:
        ring = self.ring()
        poisson = PoissonStructure(ring, [(p, q, _coeff(c)) for p, q, c in self.pairs])
        gens = [ring.parse(text) for _name, text in self.generators]
        return LagrangianVariety(poisson, gens, label=self.label)

    def t_polynomial(self):
        if self.t is None:
            return None
        return self.ring().parse(self.t)

    def text(self) -> str:
        lines = ["[space]"]
        lines.append("variables = " + " ".join(self.variables))
        lines.append("weights = " + " ".join(str(w) for w in self.weights))
        lines.append("field = " + self.field)
        lines.append("")
        lines.append("[symplectic]")
        lines.append("pairs = " + json.dumps([[p, q, str(c)] for p, q, c in self.pairs]))
        lines.append("")
        lines.append("[ideal]")
        for name, text in self.generators:
            lines.append(f"{name} = {text}")
        lines.append("")
        lines.append("[compute]")
        lines.append(f"degree_bound = {self.degree_bound}")
        if self.t is not None:
            lines.append(f"t = {self.t}")
        for key, val in self.checks.items():
            lines.append(f"{key} = {'on' if val else 'off'}")
        return "\n".join(lines) + "\n"


def _coeff(c):
    if isinstance(c, str):
        if "/" in c:
            num, den = c.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(c))
    return Fraction(c)


def parse_manifest(text: str, label: str = "") -> Manifest:
    errors = []
    section = None
    data = {"space": {}, "symplectic": {}, "compute": {}}
    generators = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith(";"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in ("space", "symplectic", "ideal", "compute"):
                errors.append(f"line {lineno}: unknown section [{section}]")
                section = None
            continue
        if "=" not in line:
            errors.append(f"line {lineno}: expected key = value")
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if section is None:
            errors.append(f"line {lineno}: entry outside any section")
        elif section == "ideal":
            generators.append((key, value))
        else:
            data[section][key] = (lineno, value)

    def take(section, key, default=None):
        entry = data[section].pop(key, None)
        if entry is None:
            return default
        return entry[1]

    variables = (take("space", "variables") or "").split()
    weights_raw = (take("space", "weights") or "").split()
    field_kind = take("space", "field", RATIONAL).lower()
    if not variables:
        errors.append("space: missing variables")
    if len(set(variables)) != len(variables):
        errors.append("space: duplicate variable names")
    weights = []
    for w in weights_raw:
        try:
            weights.append(int(w))
        except ValueError:
            errors.append(f"space: weight {w!r} is not an integer")
    if weights and variables and len(weights) != len(variables):
        errors.append("space: weights and variables differ in length")
    if any(w <= 0 for w in weights):
        errors.append("space: weights must be positive")
    if field_kind not in (RATIONAL, GAUSSIAN):
        errors.append(f"space: unknown field kind {field_kind!r}")
        field_kind = RATIONAL

    pairs = []
    pairs_raw = take("symplectic", "pairs")
    if pairs_raw is None:
        errors.append("symplectic: missing pairs")
    else:
        try:
            decoded = json.loads(pairs_raw)
            for entry in decoded:
                if len(entry) != 3:
                    raise ValueError
                p, q, c = entry
                pairs.append((str(p), str(q), _coeff(c)))
        except (ValueError, TypeError):
            errors.append("symplectic: pairs must be a JSON list of [p, q, coefficient]")

    if not generators:
        errors.append("ideal: no generators")

    bound_raw = take("compute", "degree_bound", "60")
    try:
        bound = int(bound_raw)
        if bound <= 0:
            raise ValueError
    except ValueError:
        errors.append(f"compute: bad degree_bound {bound_raw!r}")
        bound = 60
    t_text = take("compute", "t", None)
    checks = {}
    for key, (_ln, value) in list(data["compute"].items()):
        checks[key] = value.lower() in ("on", "true", "1", "yes")

    # validate against the ring when the basics parsed
    if not errors:
        try:
            ring = WeightedRing(variables, weights, field_kind)
        except Exception as exc:
            errors.append(f"space: {exc}")
            ring = None
        if ring is not None:
            seen = set()
            for p, q, c in pairs:
                for name in (p, q):
                    if name not in variables:
                        errors.append(f"symplectic: unknown variable {name!r}")
                    elif name in seen:
                        errors.append(f"symplectic: variable {name!r} paired twice")
                    else:
                        seen.add(name)
                if c == 0:
                    errors.append(f"symplectic: zero coefficient on pair ({p},{q})")
            for name in variables:
                if name not in seen:
                    errors.append(f"symplectic: unpaired variable {name}")
            for gname, text_ in generators:
                try:
                    ring.parse(text_)
                except ParseError as exc:
                    errors.append(f"ideal: {gname}: {exc}")
            if t_text is not None:
                try:
                    ring.parse(t_text)
                except ParseError as exc:
                    errors.append(f"compute: t: {exc}")
            try:
                PoissonStructure(ring, [(p, q, c) for p, q, c in pairs])
            except SymplecticError as exc:
                errors.append(f"symplectic: {exc}")

    if errors:
        raise ManifestError(errors)
    return Manifest(
        variables=variables,
        weights=weights,
        field=field_kind,
        pairs=pairs,
        generators=generators,
        degree_bound=bound,
        t=t_text,
        checks=checks,
        label=label,
    )
