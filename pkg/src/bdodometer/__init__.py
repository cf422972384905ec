"""Mixed-radix odometer dynamics on ``X = N u K`` and a truncated operator model
of the Bunce-Deddens-Toeplitz algebras."""

from .mixedradix import (
    CantorPoint,
    DigitWord,
    Extension,
    Nat,
    RadixSchedule,
    Tail,
    from_digits,
    max_point,
    n_index,
    parse_schedule,
    to_digits,
    truncate,
    zeros_point,
)
from .odometer import (
    DomainError,
    odometer_inverse,
    odometer_partial,
    odometer_total,
    orbit,
    prefix_increment,
    step_X,
)

__version__ = "0.1.0"
