"""Exception types shared across the package."""


class DataError(ValueError):
    """Malformed input data, file content, or configuration."""


class EstimationError(RuntimeError):
    """An estimator cannot produce a value from the given input."""


class CoincidentPointsError(EstimationError):
    """Coincident sample points make a kth-neighbor distance zero.

    Carries the offending row-index groups so callers can report exactly
    which observations collide.
    """

    def __init__(self, groups, context="input points"):
        self.groups = tuple(tuple(int(i) for i in g) for g in groups)
        shown = ", ".join(
            "{" + ", ".join(str(i) for i in g) + "}" for g in self.groups[:5]
        )
        more = "" if len(self.groups) <= 5 else f" (and {len(self.groups) - 5} more groups)"
        super().__init__(
            f"coincident {context} at rows {shown}{more}: kth-neighbor distances "
            "of zero make the log term undefined; if the data passed through a "
            "rank transform, rerun with the occurrence-order tie policy "
            "(--ties occurrence) so tied values receive distinct ranks"
        )
