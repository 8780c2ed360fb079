"""Shared constructions for the test suite."""

import numpy as np

from almosthilbert.embedding import embedding_space
from almosthilbert.operators import BOperator, from_h_matrix
from almosthilbert.spaces import fourier_sbasis, reconstruct


def make_space(N=4, p=2, resolution=None):
    if resolution is None:
        resolution = max(64, 8 * N)
    return embedding_space(fourier_sbasis(N, p, resolution))


def rand_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rand_operator(space, rng, scale=1.0):
    return BOperator(scale * rand_complex(rng, space.dim, space.dim), space)


def rand_selfadjoint(space, rng, scale=1.0):
    """Random naturally self-adjoint operator: transport of a Hermitian matrix."""
    a = scale * rand_complex(rng, space.dim, space.dim)
    return from_h_matrix(a + a.conj().T, space)


def random_poly(space, rng, scale=1.0):
    c = scale * rand_complex(rng, space.dim)
    return reconstruct(c, space.basis)
