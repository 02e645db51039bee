import enum
import math
from pathlib import Path

#------------------------------------------------------------------------------
# Record Kinds and Statuses
#------------------------------------------------------------------------------
class IdentityId(enum.Enum):
    """
    Enum for the identities checked by the identity suite.
    """
    THM1 = "THM1"
    THM2 = "THM2"
    COR_PI = "COR_PI"
    PARTITION = "PARTITION"


class ScanKind(enum.Enum):
    """
    Enum for the conjecture scans.
    """
    PRIME_WINDOW = "PRIME_WINDOW"
    COLLISION = "COLLISION"
    GOLDBACH_CONG = "GOLDBACH_CONG"


class ScanStatus(enum.Enum):
    """
    Enum for the outcome of a single scan record.
    """
    PASS = "PASS"
    VIOLATION = "VIOLATION"
    NOT_FOUND = "NOT_FOUND"
    # Precision guard tripped; recorded and counted, never guessed
    INCONCLUSIVE = "INCONCLUSIVE"


class Command(enum.Enum):
    """
    Enum for the CLI subcommands.
    """
    THM1 = "thm1"
    THM2 = "thm2"
    PI_FORMULA = "pi-formula"
    UPSILON = "upsilon"
    TREND = "trend"
    PRIME_WINDOW = "prime-window"
    COLLISION = "collision"
    GOLDBACH = "goldbach"


class ParityVariant(enum.Enum):
    """
    Enum for the two readings of the parity term in the pi formula.
    """
    STATEMENT = "statement"
    PROOF = "proof"
    AUDIT = "audit"

#------------------------------------------------------------------------------
# Parameter Loading Functions
#------------------------------------------------------------------------------

def parse_parameters_file(filepath):
    """
    Parse a parameters text file into a dictionary.

    Parameters
    ----------
    filepath : str or Path
        Path to the parameters text file

    Returns
    -------
    dict
        parameter_name -> value. Comma separated values become lists.

    Format:
    - Parameters: "Key: value"
    - Lists: "Key: value1, value2, value3"
    - Comments: lines starting with # or inline # after value
    """
    filepath = Path(filepath)
    if not filepath.exists():
        raise FileNotFoundError(f"Parameters file not found: {filepath}")

    result = {}

    with open(filepath, 'r', encoding='utf-8') as f:
        for line_num, line in enumerate(f, 1):
            line = line.strip()

            # Skip empty lines and full-line comments
            if not line or line.startswith('#'):
                continue

            # Remove inline comments (everything after #)
            if '#' in line:
                line = line[:line.find('#')].strip()
                if not line:
                    continue

            if ':' not in line:
                raise ValueError(
                    f"{filepath}:{line_num}: expected 'Key: value', got {line!r}"
                )

            key_part, value_part = (part.strip() for part in line.split(':', 1))
            if ',' in value_part:
                result[key_part] = [
                    _convert_value(v) for v in value_part.split(',') if v.strip()
                ]
            else:
                result[key_part] = _convert_value(value_part)

    return result


def _convert_value(value_str):
    """
    Convert a string value to appropriate Python type.
    Tries int, then float (so 1e6 style values work), then returns string.
    """
    value_str = value_str.strip()

    try:
        return int(value_str)
    except ValueError:
        pass

    try:
        as_float = float(value_str)
    except ValueError:
        return value_str
    # "1e6" is a count, not a real
    if as_float.is_integer() and 'e' in value_str.lower():
        return int(as_float)
    return as_float

#------------------------------------------------------------------------------
# Number Formatting
#------------------------------------------------------------------------------
def to_jsonable(value):
    """Exact integers stay integers; reals keep 15 significant digits.

    Strings pass through, enums become their value, and lists, tuples and
    dicts are converted element by element.
    """
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if hasattr(value, "tolist"):
        # numpy scalar or array
        return to_jsonable(value.tolist())
    value = float(value)
    if not math.isfinite(value):
        return str(value)
    return float(f"{value:.15g}")


def parse_range(text: str) -> tuple:
    """
    Parse ``A:B`` or ``A:B:S`` into (start, end, step).

    Bounds accept ``1e4`` style counts.
    """
    parts = text.split(':')
    if len(parts) not in (2, 3):
        raise ValueError(f"range must look like A:B or A:B:S, got {text!r}")
    values = []
    for part in parts:
        converted = _convert_value(part)
        if not isinstance(converted, int):
            raise ValueError(f"range bound {part!r} is not an integer")
        values.append(converted)
    start, end = values[0], values[1]
    step = values[2] if len(values) == 3 else 1
    if step < 1:
        raise ValueError(f"range step must be positive, got {step}")
    return start, end, step
