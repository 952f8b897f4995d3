from .enums import (  # noqa: F401
    AdjointConvention,
    GroupName,
    Parity,
    ScaleSide,
    SdtrArrangement,
    TableKind,
)

__all__ = [
    "AdjointConvention",
    "GroupName",
    "Parity",
    "ScaleSide",
    "SdtrArrangement",
    "TableKind",
]
