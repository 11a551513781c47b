"""Published reference values for the ground-state comparison table.

Stored as a versioned in-package table so the CLI can report deviations
without network access.  All energies in units of hbar*omega, at cutoff
delta = 0.002; the matrix-mechanics column was produced at rho = 50 with a
10000-function basis.
"""

REFERENCE_VERSION = "1"

TABLE1_DELTA = 0.002
TABLE1_MATRIX_RHO = 50.0
TABLE1_MATRIX_NMAX = 10000

# alpha -> (matrix, transcendental, c0 self-consistent, c0 closed-form)
TABLE1 = {
    -0.25: (-11294.85744903, -11295.301683, -11295.30170, -11862.24636),
    -0.20: (-8056.57184873, -8056.826663, -8056.826665, -8353.544755),
    -0.15: (-5149.73001990, -5149.852852, -5149.852880, -5274.934465),
    -0.10: (-2679.68183517, -2679.724708, -2679.724730, -2714.801773),
    -0.05: (-828.48321740, -828.4898894, -828.4900235, -831.9802335),
}

# compact-box cross-check at alpha = -0.05: rho = 5, n_max = 10000
COMPACT_BOX_GROUND_HW = -828.489881
COMPACT_BOX_RHO = 5.0
COMPACT_BOX_NMAX = 10000

# endpoint values of 4*c0 at alpha = -1/4
FOUR_C0_ENDPOINT_SELF_CONSISTENT = 0.0904
FOUR_C0_ENDPOINT_CLOSED_FORM = 0.0949
