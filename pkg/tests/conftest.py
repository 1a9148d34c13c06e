from pathlib import Path

import pytest

from siginsert.dataio import digit_path, parse_pendigits

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def digit_samples():
    # hand-made trajectories in the UCI pen-digits row format (not dataset rows)
    return parse_pendigits((DATA / "pendigits_synthetic.tra").read_text())


@pytest.fixture(scope="session")
def digit_eight(digit_samples):
    sample = next(s for s in digit_samples if s.label == 8)
    return digit_path(sample)
