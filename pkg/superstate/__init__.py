from .operators import (  # noqa: F401
    GradedOperator,
    adjoint_matrix_element_residual,
    st_apply,
    st_outer,
    st_superadjoint_check,
)
from .states import (  # noqa: F401
    SpaceFormat,
    SuperBra,
    SuperKet,
    st_body,
    st_dual,
    st_inner,
    st_scale,
)
