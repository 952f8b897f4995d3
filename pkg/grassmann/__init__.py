from .element import (  # noqa: F401
    Decomposition,
    GrassmannElement,
    as_element,
    g_decompose,
    g_exp,
    g_inverse,
    g_isclose,
    g_mul,
    g_norm_r,
    g_star,
    g_superstar,
    g_supercommutator,
)

__all__ = [
    "Decomposition",
    "GrassmannElement",
    "as_element",
    "g_decompose",
    "g_exp",
    "g_inverse",
    "g_isclose",
    "g_mul",
    "g_norm_r",
    "g_star",
    "g_superstar",
    "g_supercommutator",
]
