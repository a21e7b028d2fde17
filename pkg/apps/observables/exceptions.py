class PerturbationBreakdown(UserWarning):
    """A mean number came out negative, outside the validity of second-order theory"""

    flag = "perturbation_breakdown"


__all__ = ["PerturbationBreakdown"]
