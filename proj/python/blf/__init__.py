"""Bayesian lattice filter for time-varying autoregressive models."""

from ._blf import (
    Discount,
    FilterState,
    FitReport,
    NigPrior,
    SearchGrid,
    SimulatedProcess,
    SmoothState,
    Spectrogram,
    SpectrumPosterior,
    ase,
    backward_sample,
    backward_smooth,
    benchmark,
    default_prior,
    fit_blfdyn,
    fit_blffix,
    fit_fixed,
    forward_filter,
    frequency_grid,
    parcor_to_tvar,
    predictive_loglik,
    roots_to_coeffs,
    select_order,
    simulate,
    tvar_spectrum,
)

__version__ = "1.0.0"


def fit(x, method="blfdyn", **kwargs):
    """Fit a TVAR model with ``method`` in {"blfdyn", "blffix", "fixed"}.

    Keyword arguments are forwarded to the matching ``fit_*`` function.
    """
    dispatch = {"blfdyn": fit_blfdyn, "blffix": fit_blffix, "fixed": fit_fixed}
    try:
        fn = dispatch[method.lower()]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    return fn(x, **kwargs)
