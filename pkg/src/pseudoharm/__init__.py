"""Bound states of the 1D pseudoharmonic oscillator (harmonic plus inverse-
square coupling), solved by closed forms, transcendental matching,
small-cutoff asymptotics and sine-basis matrix mechanics."""

__version__ = "1.0.0"
