import numpy as np

from diva.rng import (
    STREAM_GENERATION,
    STREAM_ITERATION,
    STREAM_RUN_INIT,
    STREAM_SEED_SELECTION,
    derive_rng,
)


def test_streams_are_distinct():
    draws = {
        stream: derive_rng(42, stream).random(8).tobytes()
        for stream in (
            STREAM_SEED_SELECTION,
            STREAM_RUN_INIT,
            STREAM_ITERATION,
            STREAM_GENERATION,
        )
    }
    assert len(set(draws.values())) == 4


def test_same_seed_same_stream_reproduces():
    a = derive_rng(7, STREAM_ITERATION).random(16)
    b = derive_rng(7, STREAM_ITERATION).random(16)
    assert (a == b).all()


def test_different_seeds_differ():
    a = derive_rng(1, STREAM_ITERATION).random(8)
    b = derive_rng(2, STREAM_ITERATION).random(8)
    assert not (a == b).all()


def test_negative_and_huge_seeds_fold_into_64_bits():
    wrapped = derive_rng(-1, STREAM_GENERATION).random(4)
    folded = derive_rng((1 << 64) - 1, STREAM_GENERATION).random(4)
    assert (wrapped == folded).all()
    beyond = derive_rng((1 << 64) + 5, STREAM_GENERATION).random(4)
    base = derive_rng(5, STREAM_GENERATION).random(4)
    assert (beyond == base).all()


def test_stream_indices_are_pinned():
    # Serialized traces embed seeds; renumbering streams would silently
    # change every reproduced run.
    assert STREAM_SEED_SELECTION == 0
    assert STREAM_RUN_INIT == 1
    assert STREAM_ITERATION == 2
    assert STREAM_GENERATION == 3


def test_generator_is_pcg64():
    rng = derive_rng(0, STREAM_ITERATION)
    assert isinstance(rng.bit_generator, np.random.PCG64)
