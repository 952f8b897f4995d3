from .models import (  # noqa: F401
    AmplitudePayload,
    CanonicalModel,
    ElementFile,
    MatrixFile,
    MultiStateFile,
    StateFile,
    TableFile,
    TermPayload,
    parse_text,
    read_file,
)
from .reports import (  # noqa: F401
    CalibrationReport,
    EvidenceRow,
    MeasureReport,
    SuiteResult,
    VerifyReport,
)
