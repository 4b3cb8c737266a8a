"""Built-in module families.

    principal:m                 M(m), free on the regular representation Z[S_m]
    free:<trivial|sign|regular>:m
    sharpness:k,d               M = M(trivial_k) with V spanned by
                                v_[d] = sum over k-subsets S of [d] of e_S, and W = M / V
    zero                        the zero module
"""

from __future__ import annotations

from itertools import combinations

from .errors import InputError
from .linalg.rings import Ring
from .schema import ElementSpec, FBGenerator, LabelTerm, ModuleSpecFile

PRESET_NAMES = ("principal:m", "free:<trivial|sign|regular>:m", "sharpness:k,d", "zero")


def _integers(text: str, count: int, preset: str) -> list[int]:
    parts = text.split(",")
    if len(parts) != count:
        raise InputError(f"{preset!r} needs {count} comma-separated integer(s)", "preset")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise InputError(f"{preset!r} has a non-integer parameter", "preset") from None
    if any(v < 0 for v in values):
        raise InputError(f"{preset!r} has a negative parameter", "preset")
    return values


def sharpness_elements(k: int, d: int) -> list[ElementSpec]:
    """The single generator v_[d] of V."""
    terms = [LabelTerm(subset=list(s), index=1, coefficient=1) for s in combinations(range(1, d + 1), k)]
    return [ElementSpec(degree=d, terms=terms)]


def preset_spec(name: str, ring: Ring = Ring.Z, truncation: int = 8) -> ModuleSpecFile:
    """The description behind a preset name."""
    family, _, params = name.partition(":")
    common = {"ring": ring, "truncation": truncation, "name": name}
    if family == "zero" and not params:
        return ModuleSpecFile(**common)
    if family == "principal":
        (m,) = _integers(params, 1, name)
        return ModuleSpecFile(fb_generators=[FBGenerator(degree=m, preset="regular")], **common)
    if family == "free":
        kind, _, degree = params.partition(":")
        if kind not in ("trivial", "sign", "regular"):
            raise InputError(f"unknown FB preset {kind!r} in {name!r}", "preset")
        (m,) = _integers(degree, 1, name)
        return ModuleSpecFile(fb_generators=[FBGenerator(degree=m, preset=kind)], **common)
    if family == "sharpness":
        k, d = _integers(params, 2, name)
        if d <= k:
            raise InputError(f"sharpness:k,d needs d > k, got k={k}, d={d}", "preset")
        return ModuleSpecFile(
            fb_generators=[FBGenerator(degree=k, preset="trivial")],
            elements=sharpness_elements(k, d),
            mode="quotient",
            **common,
        )
    raise InputError(f"unknown preset {name!r}; expected one of {', '.join(PRESET_NAMES)}", "preset")
