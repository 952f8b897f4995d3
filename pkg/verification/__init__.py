from .runner import run_suite, run_suites, suite_rng  # noqa: F401
from .suites import SUITES, Suite  # noqa: F401
