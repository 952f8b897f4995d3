from .groups import (  # noqa: F401
    GroupCheck,
    InvariantTensor,
    e_osp,
    e_sl,
    osp_algebra_element,
    sm_group_check,
)
from .linalg import (  # noqa: F401
    sm_berezinian,
    sm_det_even,
    sm_exp,
    sm_inverse,
    sm_log,
)
from .matrix import (  # noqa: F401
    MatrixSplit,
    SuperFormat,
    SuperMatrix,
    ValidationReport,
    sm_body_array,
    sm_inverse_supertranspose,
    sm_mul,
    sm_norm,
    sm_residual,
    sm_split,
    sm_superadjoint,
    sm_supertrace,
    sm_supertranspose,
    sm_validate,
)
from .sdtr import CalibrationResult, calibrate_sdtr, sm_sdtr  # noqa: F401
