"""Classical fidelity benchmarks and simulators for remote state preparation.

The package computes the best average fidelity that classical (unentangled)
strategies can reach for a finite ensemble of pure target states, evaluates
hit-rate data against the binary-fidelity benchmark, and provides seeded
Monte Carlo simulators for both classical strategies and synthetic hit/miss
experiment tables.
"""

__version__ = "0.1.0"
