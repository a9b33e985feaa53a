"""Exception types raised across the hcvr package."""


class HcvrError(Exception):
    """Base class for all hcvr-specific errors."""


class ParseError(HcvrError):
    """A CSV cell could not be parsed as a number.

    Carries the 1-based data row and column of the offending cell.
    """

    def __init__(self, row: int, col: int, value: str):
        self.row = row
        self.col = col
        self.value = value
        super().__init__(f"non-numeric cell {value!r} at row {row}, column {col}")


class LabelError(HcvrError):
    """A label value is outside {0, 1}."""


class EmptyDatasetError(HcvrError):
    """The input file contains no data rows."""


class InvalidFractionError(HcvrError):
    """test_fraction outside the open interval (0, 1)."""


class StratifyError(HcvrError):
    """A class is too small to stratify on."""


class LengthMismatchError(HcvrError):
    """Paired vectors have different lengths."""


class TooFewSamplesError(HcvrError):
    """Fewer than two samples; correlation undefined."""


class InvalidThresholdError(HcvrError):
    """Correlation threshold outside [0, 1]."""


class TooFewFeaturesError(HcvrError):
    """Pairwise voting needs at least two features."""


class InvalidRangeError(HcvrError):
    """Malformed threshold sweep range or step."""


class SingleClassError(HcvrError):
    """Operation requires both classes to be present."""


class InvalidKError(HcvrError):
    """Requested k outside [1, n_features]."""


class EmptySubsetError(HcvrError):
    """A classifier cannot be trained on an empty feature subset."""


class SubsetMismatchError(HcvrError):
    """Evaluation feature subset differs from the training subset."""
