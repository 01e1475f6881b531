"""Closed-form entropy values for every protocol stage.

These are written directly in terms of ``|a|^2``, ``|b|^2`` and
``u = a b* + a* b`` and never touch a density matrix, so they serve as an
independent check on the simulated pipeline.
"""

from __future__ import annotations

import math
import re

from .errors import UnknownQuantity
from .inputs import InputAmplitudes, Stage

# Same threshold the numerical relative entropy uses to call a weight zero.
DIVERGENCE_TOL = 1e-10

JOINT_KEYS = ("S_A", "S_B", "S_C", "S_AB", "S_AC", "S_BC", "S_ABC")
MUTUAL_KEYS = ("I_AB", "I_BC", "I_AC")
CONDITIONAL_KEYS = (
    "S_A_given_B", "S_A_given_C", "S_B_given_C", "S_B_given_A", "S_C_given_A", "S_C_given_B",
)
RELATIVE_KEYS = ("rel_C_A", "rel_A_C", "rel_C_B", "rel_B_C", "rel_A_B", "rel_B_A")
ENTROPY_KEYS = JOINT_KEYS + MUTUAL_KEYS + CONDITIONAL_KEYS


def xlog2x(p: float) -> float:
    return p * math.log2(p) if p > 0 else 0.0


def shannon_ab(amps: InputAmplitudes) -> float:
    """``-|a|^2 log|a|^2 - |b|^2 log|b|^2``."""
    return -xlog2x(amps.p0) - xlog2x(amps.p1)


def coherence_term(u: float) -> float:
    """``(1/2) log(1 - u^2) + (u/2) log((1 + u)/(1 - u))``, with its limit 1 at ``|u| = 1``."""
    if abs(u) >= 1.0:
        return 1.0
    lp, lm = math.log2(1.0 + u), math.log2(1.0 - u)
    return 0.5 * (lp + lm) + 0.5 * u * (lp - lm)


def _joint_entropies(amps: InputAmplitudes, stage: Stage) -> dict[str, float]:
    h = shannon_ab(amps)
    f = coherence_term(amps.u)
    if stage is Stage.S1:
        return dict.fromkeys(JOINT_KEYS, 0.0)
    if stage is Stage.S2:
        return dict(S_A=1.0, S_B=1.0, S_C=0.0, S_AB=0.0, S_AC=1.0, S_BC=1.0, S_ABC=0.0)
    if stage in (Stage.S3, Stage.S4):
        return dict(S_A=1.0, S_B=1.0, S_C=h, S_AB=h, S_AC=1.0, S_BC=1.0, S_ABC=0.0)
    if stage is Stage.S45_1:
        return dict(S_A=1.0, S_B=1.0, S_C=1.0, S_AB=h, S_AC=2.0 - f, S_BC=2.0 - f, S_ABC=1.0)
    if stage is Stage.S45_2:
        return dict(S_A=1.0, S_B=1.0, S_C=h, S_AB=1.0 + h, S_AC=1.0 + h, S_BC=1.0, S_ABC=1.0)
    return dict(S_A=1.0, S_B=1.0, S_C=1.0, S_AB=1.0 + h, S_AC=2.0, S_BC=2.0 - f, S_ABC=2.0)


def _printed_derived(amps: InputAmplitudes, stage: Stage) -> dict[str, float]:
    """Mutual and conditional entropies as printed for stages 1 to 5."""
    h = shannon_ab(amps)
    f = coherence_term(amps.u)
    if stage is Stage.S1:
        return dict.fromkeys(MUTUAL_KEYS + CONDITIONAL_KEYS, 0.0)
    if stage is Stage.S2:
        return dict(
            I_AB=2.0, I_BC=0.0, I_AC=0.0,
            S_A_given_B=-1.0, S_A_given_C=1.0, S_B_given_C=1.0,
            S_B_given_A=-1.0, S_C_given_A=0.0, S_C_given_B=0.0,
        )
    if stage in (Stage.S3, Stage.S4):
        return dict(
            I_AB=2.0 - h, I_BC=h, I_AC=h,
            S_A_given_B=-1.0 + h, S_A_given_C=1.0 - h, S_B_given_C=1.0 - h,
            S_B_given_A=-1.0 + h, S_C_given_A=0.0, S_C_given_B=0.0,
        )
    return dict(
        I_AB=1.0 - h, I_BC=f, I_AC=0.0,
        S_A_given_B=h, S_A_given_C=1.0, S_B_given_C=1.0 - f,
        S_B_given_A=h, S_C_given_A=1.0, S_C_given_B=1.0 - f,
    )


def _composed_derived(joint: dict[str, float]) -> dict[str, float]:
    """Mutual and conditional entropies assembled from joint-entropy closed forms."""

    def s(*names: str) -> float:
        return joint["S_" + "".join(sorted("".join(names)))]

    out = {f"I_{x}{y}": s(x) + s(y) - s(x, y) for x, y in ("AB", "BC", "AC")}
    for key in CONDITIONAL_KEYS:
        x, y = key[2], key[-1]
        out[key] = s(x, y) - s(y)
    return out


def _divergent_unless_zero(weight: float, finite: float = 0.0) -> float:
    return math.inf if weight > DIVERGENCE_TOL else finite


def _relative_entropies(amps: InputAmplitudes, stage: Stage) -> dict[str, float]:
    h = shannon_ab(amps)
    if stage is Stage.S1:
        off_plus = 0.5 * (1.0 - amps.u)
        return dict(
            rel_C_A=_divergent_unless_zero(off_plus),
            rel_A_C=_divergent_unless_zero(off_plus),
            rel_C_B=_divergent_unless_zero(amps.p1),
            rel_B_C=_divergent_unless_zero(amps.p1),
            rel_A_B=math.inf,
            rel_B_A=math.inf,
        )
    if stage is Stage.S2:
        return dict(rel_C_A=1.0, rel_A_C=math.inf, rel_C_B=1.0, rel_B_C=math.inf, rel_A_B=0.0, rel_B_A=0.0)
    if stage in (Stage.S3, Stage.S4):
        if min(amps.p0, amps.p1) <= DIVERGENCE_TOL:
            back = math.inf
        else:
            back = -math.log2(2.0 * math.sqrt(amps.p0 * amps.p1))
        return dict(rel_C_A=1.0 - h, rel_A_C=back, rel_C_B=1.0 - h, rel_B_C=back, rel_A_B=0.0, rel_B_A=0.0)
    if stage is Stage.S5:
        return dict.fromkeys(RELATIVE_KEYS, 0.0)
    raise UnknownQuantity(f"no closed-form relative entropies are tabulated for stage {stage.value}")


_ALIASES = {
    re.compile(r"^S\(([ABC](?:,[ABC])*)\)$"): lambda m: "S_" + "".join(sorted(m.group(1).split(","))),
    re.compile(r"^S\(([ABC]):([ABC])\)$"): lambda m: "I_" + "".join(sorted((m.group(1), m.group(2)))),
    re.compile(r"^S\(([ABC])\|([ABC])\)$"): lambda m: f"S_{m.group(1)}_given_{m.group(2)}",
    re.compile(r"^S\((?:rho\^)?([ABC])\|\|(?:rho\^)?([ABC])\)$"): lambda m: f"rel_{m.group(1)}_{m.group(2)}",
}


def canonical_quantity(name: str) -> str:
    """Map table-style names such as ``"S(A,B)"`` or ``"S(A|B)"`` to report keys."""
    text = name.replace(" ", "")
    for pattern, build in _ALIASES.items():
        m = pattern.match(text)
        if m:
            text = build(m)
            break
    if text.startswith("I_") and len(text) == 4:
        text = "I_" + "".join(sorted(text[2:]))
    if text not in ENTROPY_KEYS + RELATIVE_KEYS:
        raise UnknownQuantity(f"unknown quantity {name!r}")
    return text


def oracle_value(amps: InputAmplitudes, stage: Stage, quantity: str) -> float:
    """Closed-form value of one entropy quantity; ``math.inf`` for divergent relative entropies.

    Raises:
        UnknownQuantity: for names outside the tabulated set, including
            relative entropies at the intermediate stages.
    """
    key = canonical_quantity(quantity)
    if key in RELATIVE_KEYS:
        return _relative_entropies(amps, stage)[key]
    joint = _joint_entropies(amps, stage)
    if key in joint:
        return joint[key]
    if stage in (Stage.S45_1, Stage.S45_2):
        return _composed_derived(joint)[key]
    return _printed_derived(amps, stage)[key]


def oracle_table(amps: InputAmplitudes, stage: Stage) -> dict[str, float]:
    """Every tabulated quantity for one stage."""
    out = {k: oracle_value(amps, stage, k) for k in ENTROPY_KEYS}
    if stage not in (Stage.S45_1, Stage.S45_2):
        out.update(_relative_entropies(amps, stage))
    return out
