"""Spacing-shift toolkit.

Exact language counts, entropy estimates, structure certificates and the
reproducible experiment harness, backed by a C++ core.

    >>> import spacelab
    >>> view = spacelab.build_pset(spacelab.PSetSpec.multiples(2), 4)
    >>> spacelab.count_words(view, 4, mode="naive")
    7
"""

from ._core import (
    DEFAULT_BUDGET,
    BudgetExhaustedError,
    PSetSpec,
    PSetView,
    __version__,
    build_pset,
    corpus_names,
    count_words,
    default_params,
    density_report,
    entropy_profile,
    experiment_ids,
    f_statistic,
    find_delta_chain,
    find_ip_generator,
    find_ip_ip_generator,
    greedy_point,
    intersective_refute,
    is_admissible,
    max_ones,
    periodic_point_check,
    proximal_probe,
    run_experiment,
    syndetic_gap,
    thick_run,
    transitive_gap_check,
    verify_witness,
)


def view(spec, horizon):
    """Build a membership view from a PSetSpec, a dict, or a JSON string."""
    if not isinstance(spec, PSetSpec):
        spec = PSetSpec(spec)
    return build_pset(spec, horizon)


__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
