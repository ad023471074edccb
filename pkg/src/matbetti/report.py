"""Text renderings shared by the CLI and the acceptance checks."""

from __future__ import annotations

from .presentation import FiberStructure, Presentation, non_generic_elements


def degree_text(alpha) -> str:
    return "(" + ",".join(str(x) for x in alpha) + ")"


def set_text(P: Presentation, labels) -> str:
    return "{" + ",".join(str(x) for x in P.ordered(labels)) + "}"


def minimal_sets_text(P: Presentation, fs: FiberStructure) -> str:
    return ", ".join(set_text(P, J) for J in fs.minimal_sets)


def generic_summary(P: Presentation) -> str:
    bad = non_generic_elements(P)
    if not bad:
        return "generic type: yes"
    return f"generic type: no (witness {degree_text(bad[0].alpha)})"


def values_text(values: dict) -> str:
    nz = [f"i={i} → {v}" for i, v in sorted(values.items()) if i >= 1 and v]
    return ", ".join(nz) if nz else "all zero"


def fiber_record(P: Presentation, fs: FiberStructure) -> dict:
    return {
        "alpha": list(fs.alpha),
        "I_upper": [str(x) for x in P.ordered(fs.i_upper)],
        "minimal_sets": [[str(x) for x in P.ordered(J)] for J in fs.minimal_sets],
        "generic": fs.is_generic,
        "I_lower": None if fs.i_lower is None else [str(x) for x in P.ordered(fs.i_lower)],
    }
