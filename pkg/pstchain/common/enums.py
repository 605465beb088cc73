from enum import Enum


class Command(str, Enum):
    COUPLINGS = "couplings"
    SPECTRUM = "spectrum"
    EVOLVE = "evolve"
    SCAN = "scan"
    CHECK_PST = "check-pst"
    CHECK_FR = "check-fr"
    CYCLE = "cycle"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class Regime(str, Enum):
    """Which terms of Q_2(J) = alpha*J^2 + beta*J are switched on."""
    NEAREST_NEIGHBOUR = "nearest-neighbour"   # alpha = 0
    MIXED = "mixed"                           # alpha > 0, beta > 0
    PURE_QUADRATIC = "pure-quadratic"         # beta = 0


class ThetaClass(str, Enum):
    RETURN = "return"
    BALANCED = "balanced"
    PST = "pst"


class Obstruction(str, Enum):
    PARITY_MISMATCH = "parity-mismatch"
    EVEN_NUMERATOR = "even-numerator"
    ODD_CHAIN_PURE_QUADRATIC = "odd-chain-pure-quadratic"
    NEAREST_NEIGHBOUR = "nearest-neighbour"
    IRRATIONAL_RATIO = "irrational-ratio"


class ExitStatus(int, Enum):
    OK = 0
    USAGE_ERROR = 1
    VERIFICATION_FAILED = 2


class HTTPStatus(int, Enum):
    OK = 200
    BAD_REQUEST = 400
    UNPROCESSABLE_ENTITY = 422
    INTERNAL_SERVER_ERROR = 500
