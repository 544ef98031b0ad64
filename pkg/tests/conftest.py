"""Shared fixtures: the suite preset runs, executed once per session."""

import pytest

from hyperburg import validate_params
from hyperburg.initial_data import ProfileSpec, sample_initial_state
from hyperburg.runner import execute_config
from hyperburg.solver import sample_trajectory
from hyperburg.suite import (
    BLOWUP_LEVELS,
    IDENTITY_LEVELS,
    blowup_preset_config,
    cone_preset_config,
    identity_preset_config,
    propagation_preset_config,
    smalldata_preset_config,
)


@pytest.fixture(scope="session")
def params_unit():
    return validate_params(1.0, 1.0, 1.0)


@pytest.fixture(scope="session")
def propagation_report():
    return execute_config(propagation_preset_config())


@pytest.fixture(scope="session")
def cone_bundle():
    """(config, report, sampled trajectory states) of the cone preset."""
    config = cone_preset_config()
    report = execute_config(config)
    state0 = sample_initial_state(
        config.params,
        config.grid,
        ProfileSpec("odd_bump", config.ic.a, config.ic.b, config.params.L),
    )
    states = sample_trajectory(
        state0, config.params, t_end=config.t_end, sample_stride=8, cfl=config.cfl
    )
    return config, report, states


@pytest.fixture(scope="session")
def identity_reports():
    return [execute_config(identity_preset_config(n)) for n in IDENTITY_LEVELS]


@pytest.fixture(scope="session")
def blowup_reports():
    return [execute_config(blowup_preset_config(n)) for n in BLOWUP_LEVELS]


@pytest.fixture(scope="session")
def smalldata_report():
    return execute_config(smalldata_preset_config())


@pytest.fixture(scope="session")
def all_preset_reports(
    propagation_report, cone_bundle, identity_reports, blowup_reports, smalldata_report
):
    """Every executed suite-preset report, keyed by a readable tag."""
    reports = {
        "propagation": propagation_report,
        "cone": cone_bundle[1],
        "smalldata": smalldata_report,
    }
    for n, rep in zip(IDENTITY_LEVELS, identity_reports):
        reports[f"identity-n{n}"] = rep
    for n, rep in zip(BLOWUP_LEVELS, blowup_reports):
        reports[f"blowup-n{n}"] = rep
    return reports
