"""One-shot attribute bundle for a complex."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .boolrep import is_boolean_representable
from .core import BRSCError, SimplicialComplex, is_matroid
from .structure import is_near_matroid
from .tbrsc import is_tbrsc
from .topology import betti, pi1_rank


@dataclass(frozen=True)
class ComplexReport:
    dim: int
    rank: int
    is_simple: bool
    is_paving: bool
    is_matroid: bool
    is_br: bool
    is_tbrsc: bool
    is_pure: bool
    is_near_matroid: bool
    pi1_rank: int | None
    betti: list[int] | None

    def as_dict(self) -> dict:
        return asdict(self)

    def consistent(self) -> bool:
        return (not self.is_matroid or self.is_br) and (not self.is_br or self.is_tbrsc) \
            and (not self.is_matroid or self.is_pure)


def analyze(S: SimplicialComplex, cap: int | None = None, homology: bool = True) -> ComplexReport:
    tb = bool(is_tbrsc(S, cap))
    try:
        rank = pi1_rank(S, cap) if tb else None
    except BRSCError:
        rank = None
    report = ComplexReport(
        dim=S.dim,
        rank=S.rank,
        is_simple=S.is_simple(),
        is_paving=S.is_paving(),
        is_matroid=is_matroid(S),
        is_br=bool(is_boolean_representable(S, cap)),
        is_tbrsc=tb,
        is_pure=S.is_pure(),
        is_near_matroid=bool(is_near_matroid(S, cap)),
        pi1_rank=rank,
        betti=betti(S) if homology else None,
    )
    if not report.consistent():
        raise AssertionError(f"inconsistent report {report}")
    return report
