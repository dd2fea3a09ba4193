from ..exceptions import GridError, NoFlatError


def check_flat_free(noflat):

    if not noflat:
        message = "The profile touches its envelope inside an affine interval, use the one-sided fields instead"  # noqa: E501
        raise NoFlatError(message)


def check_quotient_steps(steps):

    if not steps:
        raise GridError("At least one quotient step is required")
    if any(s == 0 for s in steps):
        raise GridError("Quotient steps should be nonzero")
