from fractions import Fraction

import numpy as np
import pytest

from dtsim.core.exceptions import InvalidSpecError
from dtsim.models.state import CLEAR_ALL
from dtsim.processes import RandomStream, build_grid, sample_arrivals, sample_channels, sample_service, stream_id
from dtsim.processes.samplers import (
    bernoulli,
    discrete,
    draw_arrival,
    draw_service,
    poisson,
    uniform_integer,
)
from dtsim.processes.streams import CHUNK_SLOTS, chunk_code
from dtsim.schemas.processes import (
    BernoulliRate,
    ClearAllService,
    ConstantArrival,
    ExplicitTraceArrival,
    PeriodicSequenceArrival,
    PoissonArrival,
)

TOP = 2**64 - 1


class TestStreams:
    def test_stream_ids_are_distinct(self):
        ids = {stream_id(leg, process) for leg in (0, 1) for process in range(3)}
        assert ids == set(range(6))

    def test_chunk_code_interleaves_signs(self):
        assert [chunk_code(c) for c in (0, -1, 1, -2, 2)] == [0, 1, 2, 3, 4]

    def test_slot_words_are_pure(self):
        a = RandomStream(5, 0, 1, 3)
        b = RandomStream(5, 0, 1, 3)
        # read in a different order
        late = b.slot_words(5000).copy()
        assert np.array_equal(a.slot_words(0), b.slot_words(0))
        assert np.array_equal(a.slot_words(5000), late)

    def test_negative_slots_are_addressable(self):
        stream = RandomStream(5, 0, 1, 2)
        assert stream.slot_words(-1).shape == (2,)
        assert not np.array_equal(stream.slot_words(-1), stream.slot_words(CHUNK_SLOTS - 1))

    @pytest.mark.parametrize("other", [(6, 0, 1), (5, 1, 1), (5, 0, 2)])
    def test_keys_separate_streams(self, other):
        base = RandomStream(5, 0, 1, 4).slot_words(3)
        assert not np.array_equal(base, RandomStream(*other, 4).slot_words(3))

    def test_empty_stream(self):
        assert RandomStream(0, 0, 0, 0).slot_words(10).shape == (0,)


class TestSamplers:
    def test_bernoulli_is_exact(self):
        half = Fraction(1, 2)
        assert bernoulli(2**63 - 1, half)
        assert not bernoulli(2**63, half)
        assert not bernoulli(0, Fraction(0))
        assert bernoulli(TOP, Fraction(1))

    def test_uniform_integer_covers_bounds(self):
        assert uniform_integer(0, 2, 6) == 2
        assert uniform_integer(TOP, 2, 6) == 6
        assert uniform_integer(TOP, 4, 4) == 4

    def test_discrete_uses_cumulative_probabilities(self):
        values, probabilities = [0, 2, 5], [Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)]
        assert discrete(0, values, probabilities) == 0
        assert discrete(2**62, values, probabilities) == 2
        assert discrete(2**63, values, probabilities) == 5
        assert discrete(TOP, values, probabilities) == 5

    def test_poisson_zero_rate(self):
        assert poisson(TOP, Fraction(0)) == 0

    def test_poisson_mean(self):
        stream = RandomStream(11, 0, 0, 1)
        draws = [poisson(int(stream.slot_words(t)[0]), Fraction(3)) for t in range(20000)]
        assert abs(np.mean(draws) - 3) < 0.1

    def test_poisson_inverts_the_cdf(self):
        # P(0) = exp(-1/3) = 0.71653...
        assert poisson(0, Fraction(1, 3)) == 0
        assert poisson(int(Fraction("0.7165") * 2**64), Fraction(1, 3)) == 0
        assert poisson(int(Fraction("0.7166") * 2**64), Fraction(1, 3)) == 1
        # CDF(0) = 0.3679, CDF(1) = 0.7358
        assert poisson(2**63, Fraction(1)) == 1
        assert poisson(TOP, Fraction(15)) > 15

    def test_poisson_large_rate_mean(self):
        stream = RandomStream(13, 0, 0, 1)
        draws = [poisson(int(stream.slot_words(t)[0]), Fraction(15)) for t in range(20000)]
        assert abs(np.mean(draws) - 15) < 0.2

    def test_uniform_integer_mean(self):
        stream = RandomStream(14, 0, 2, 1)
        draws = [uniform_integer(int(stream.slot_words(t)[0]), 3, 7) for t in range(20000)]
        assert set(draws) == {3, 4, 5, 6, 7}
        assert abs(np.mean(draws) - 5) < 0.05

    def test_bernoulli_frequency(self):
        stream = RandomStream(12, 0, 1, 1)
        hits = sum(bernoulli(int(stream.slot_words(t)[0]), Fraction(3, 5)) for t in range(20000))
        assert abs(hits / 20000 - 0.6) < 0.02

    def test_periodic_and_explicit_arrivals(self):
        periodic = PeriodicSequenceArrival(values=[8, 0])
        assert [draw_arrival(periodic, t, 0) for t in range(4)] == [8, 0, 8, 0]
        explicit = ExplicitTraceArrival(values=[1, 2, 3])
        assert draw_arrival(explicit, 2, 0) == 3
        with pytest.raises(InvalidSpecError):
            draw_arrival(explicit, 3, 0)

    def test_clear_all_service(self):
        assert draw_service(ClearAllService(), 0, 0) == CLEAR_ALL


class _Entry:
    def __init__(self, row, col, spec):
        self.row, self.col, self.spec = row, col, spec


def test_grid_cells_are_independent_of_neighbours():
    """Changing one cell's kind leaves the other cells' draws untouched."""
    poisson_entry = _Entry(1, 1, PoissonArrival(rate=2))
    first = build_grid([poisson_entry, _Entry(1, 2, PoissonArrival(rate=4))], 1, 2, lambda e: e.row, lambda e: e.col)
    second = build_grid([poisson_entry, _Entry(1, 2, ConstantArrival(a=1))], 1, 2, lambda e: e.row, lambda e: e.col)
    stream = RandomStream(3, 0, 0, 2)
    for t in range(50):
        assert sample_arrivals(first, t, stream)[0, 0] == sample_arrivals(second, t, stream)[0, 0]


def test_grids_sample_with_expected_shapes():
    stream = RandomStream(3, 0, 1, 6)
    grid = [[BernoulliRate(p=1, rate=4)] * 3 for _ in range(2)]
    c = sample_channels(grid, 0, stream)
    assert c.shape == (2, 3)
    assert (c == 4).all()
    services = [[ClearAllService()]]
    assert sample_service(services, 0, RandomStream(3, 0, 2, 1))[0, 0] == CLEAR_ALL
