"""Shared generators and oracles for the test suite."""

import numpy as np

import schurcol as sc


def random_unitary(rng, size):
    """Haar-ish unitary from QR of a complex Gaussian with positive R diagonal."""
    a = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_params(rng, n, rmax=0.95):
    """n strictly contractive parameters followed by one unimodular value."""
    body = rmax * np.sqrt(rng.uniform(size=n)) * np.exp(
        2j * np.pi * rng.uniform(size=n)
    )
    terminal = np.exp(2j * np.pi * rng.uniform())
    return sc.SchurParameterSequence(tuple(body) + (terminal,))


def random_blaschke(rng, n, rmax=0.9, sep=0.05):
    """Blaschke product with zeros of moduli <= rmax and pairwise gaps >= sep."""
    zeros = []
    while len(zeros) < n:
        z = rmax * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        if all(abs(z - w) >= sep for w in zeros):
            zeros.append(complex(z))
    c = np.exp(2j * np.pi * rng.uniform())
    return sc.BlaschkeProduct(complex(c), tuple(zeros))


def random_colligation(rng, n, rmax=0.95):
    """A minimal unitary colligation with state dimension n."""
    return sc.colligation_from_schur_parameters(random_params(rng, n, rmax=rmax))


def taylor_coefficients(fn, count, radius=0.5, samples=256):
    """Taylor coefficients at 0 by the Cauchy integral over a small circle."""
    nodes = np.exp(2j * np.pi * np.arange(samples) / samples)
    values = np.array([fn(radius * t) for t in nodes])
    hat = np.fft.fft(values) / samples
    return hat[:count] / radius ** np.arange(count)
