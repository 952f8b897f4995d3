from .measures import (  # noqa: F401
    BerezinianComparison,
    SeparabilityVerdict,
    SupertangleResult,
    berezinian_comparison,
    concurrence,
    is_separable,
    superconcurrence,
    supertangle,
    tangle,
    witness_f,
)
from .multistate import (  # noqa: F401
    MultiState,
    TwoPartyTable,
    body_state,
    make_multistate,
    slot_parity_counts,
    tensor_many,
    tensor_states,
)
from .qudits import (  # noqa: F401
    CrossQutrit,
    Qudit,
    SuperQudit,
    cross_qutrit,
    make_qudit,
    make_superqudit,
    superqudit_norm,
)
