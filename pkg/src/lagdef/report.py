"""Machine- and human-readable reports for pipeline runs.

The structured form is JSON with stable field order; all numbers are
exact (eigenvalues as numerator/denominator/multiplicity triples).  The
timings block is informational and excluded from equality comparisons.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .fields import GaussianRational
from .pipeline import LTReport

SCHEMA_VERSION = 1


@dataclass
class Report:
    label: str
    verdicts: dict
    lt1: int
    lt2: int
    eigenvalues: list  # (num, den, mult) with gaussian entries flattened
    eigenvalue_remainders: list
    t: str | None
    t_weight: int | None
    free_rank: int
    degree_bound: int
    certified: bool
    kernel_degrees: dict
    cokernel_degrees: dict
    torsion_degrees: dict
    generator_degrees: dict
    resonance_degrees: list
    symmetric_spectrum: bool | None
    certificates: list
    notes: list
    timings: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "label": self.label,
            "verdicts": {k: self.verdicts[k] for k in sorted(self.verdicts)},
            "lt1": self.lt1,
            "lt2": self.lt2,
            "eigenvalues": self.eigenvalues,
            "eigenvalue_remainders": self.eigenvalue_remainders,
            "t": self.t,
            "t_weight": self.t_weight,
            "free_rank": self.free_rank,
            "degree_bound": self.degree_bound,
            "certified": self.certified,
            "kernel_degrees": {str(k): v for k, v in sorted(self.kernel_degrees.items())},
            "cokernel_degrees": {str(k): v for k, v in sorted(self.cokernel_degrees.items())},
            "torsion_degrees": {str(k): v for k, v in sorted(self.torsion_degrees.items())},
            "generator_degrees": {str(k): v for k, v in sorted(self.generator_degrees.items())},
            "resonance_degrees": self.resonance_degrees,
            "symmetric_spectrum": self.symmetric_spectrum,
            "certificates": self.certificates,
            "notes": self.notes,
            "timings": self.timings,
        }
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"

    @staticmethod
    def from_json(text: str) -> "Report":
        payload = json.loads(text)
        if payload.get("schema_version") != SCHEMA_VERSION:
            raise ValueError("unsupported schema version")
        return Report(
            label=payload["label"],
            verdicts=payload["verdicts"],
            lt1=payload["lt1"],
            lt2=payload["lt2"],
            eigenvalues=[tuple(e) for e in payload["eigenvalues"]],
            eigenvalue_remainders=payload.get("eigenvalue_remainders", []),
            t=payload["t"],
            t_weight=payload["t_weight"],
            free_rank=payload["free_rank"],
            degree_bound=payload["degree_bound"],
            certified=payload["certified"],
            kernel_degrees={int(k): v for k, v in payload["kernel_degrees"].items()},
            cokernel_degrees={int(k): v for k, v in payload["cokernel_degrees"].items()},
            torsion_degrees={int(k): v for k, v in payload["torsion_degrees"].items()},
            generator_degrees={int(k): v for k, v in payload["generator_degrees"].items()},
            resonance_degrees=payload["resonance_degrees"],
            symmetric_spectrum=payload["symmetric_spectrum"],
            certificates=payload.get("certificates", []),
            notes=payload.get("notes", []),
            timings=payload.get("timings", {}),
        )

    def comparable(self) -> str:
        data = json.loads(self.to_json())
        data.pop("timings", None)
        return json.dumps(data, sort_keys=True)

    def eigenvalue_strings(self) -> list:
        out = []
        for num, den, mult in self.eigenvalues:
            s = f"{num}" if den == 1 else f"{num}/{den}"
            out.append(s if mult == 1 else f"{s} (x{mult})")
        return out

    def table(self) -> str:
        eig = ", ".join(self.eigenvalue_strings()) or "-"
        rows = [
            ("label", self.label),
            ("involutive", _mark(self.verdicts.get("involutive"))),
            ("quasi-homogeneous", _mark(self.verdicts.get("quasi_homogeneous"))),
            ("condition P", _mark(self.verdicts.get("condition_p"))),
            ("perversity", _mark(self.verdicts.get("perversity"))),
            ("LT^1", str(self.lt1)),
            ("LT^2", str(self.lt2)),
            ("eigenvalues (multiplicity)", eig),
            ("free rank", str(self.free_rank)),
            ("t", f"{self.t} (weight {self.t_weight})" if self.t else "-"),
            ("degree bound", str(self.degree_bound)),
            ("certified", _mark(self.certified)),
        ]
        width = max(len(k) for k, _ in rows)
        lines = [f"{k.ljust(width)}  {v}" for k, v in rows]
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def _mark(v):
    if v is None:
        return "-"
    return "yes" if v else "NO"


def _eig_triples(pairs) -> tuple:
    triples = []
    remainders = []
    for value, mult in pairs:
        if isinstance(value, GaussianRational):
            if value.im != 0:
                remainders.append([str(value), mult])
                continue
            value = value.re
        triples.append([value.numerator, value.denominator, mult])
    return triples, remainders


def report_from_lt(lt: LTReport, timings: dict | None = None) -> Report:
    triples, remainders = _eig_triples(lt.eigenvalues)
    for p in lt.connection.pencils if lt.connection else []:
        if p.remainder and len(p.remainder) > 1:
            remainders.append(["unfactored determinant cofactor", len(p.remainder) - 1])
    certs = []
    return Report(
        label=lt.label,
        verdicts={
            "involutive": lt.involutive,
            "quasi_homogeneous": lt.quasi_homogeneous,
            "condition_p": lt.condition_p,
            "perversity": lt.perversity,
        },
        lt1=lt.lt1,
        lt2=lt.lt2,
        eigenvalues=triples,
        eigenvalue_remainders=remainders,
        t=str(lt.t) if lt.t is not None else None,
        t_weight=lt.t_weight,
        free_rank=lt.free_rank,
        degree_bound=lt.degree_bound,
        certified=lt.certified,
        kernel_degrees=dict(lt.kernel_degrees),
        cokernel_degrees=dict(lt.cokernel_degrees),
        torsion_degrees=dict(lt.torsion_degrees),
        generator_degrees=dict(lt.generator_degrees),
        resonance_degrees=list(lt.resonance_degrees),
        symmetric_spectrum=lt.symmetric_spectrum,
        certificates=certs,
        notes=list(lt.notes),
        timings=timings or {},
    )
