"""Numerical tolerances shared by the edge solver, census and oracles."""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace


@dataclass(frozen=True)
class ToleranceConfig:
    # |P(x)| bound for accepted roots, relative to max(1, sum |coeff|)
    root_residual_tol: float = 1e-11
    # roots closer than this are merged into one degenerate critical point
    cluster_tol: float = 1e-7
    # |P'| below this at a root marks it as a multiple root
    deriv_tol: float = 1e-7
    classify_offset_cap: float = 1e-5
    right_angle_tol: float = 1e-9
    # 1e-8 admits vertices quoted to 7 significant digits
    isosceles_rel_tol: float = 1e-8
    # |b - 1/sqrt(8)| within this reports the isosceles threshold case
    threshold_band: float = 1e-8
    degenerate_area_tol: float = 1e-12
    bisect_tol: float = 1e-13
    grid_n: int = 64
    max_iter: int = 100

    def __post_init__(self) -> None:
        for f in fields(self):
            if not getattr(self, f.name) > 0:
                raise ValueError(f"{f.name} must be positive")

    def with_overrides(self, **kw) -> "ToleranceConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT = ToleranceConfig()
