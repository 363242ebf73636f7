"""Physical constants used by the channel models.

The propagation speed is the nominal 3e8 m/s customary in link-budget work,
not the exact SI value; wavenumbers derived from it feed the scattering
model and its pinned reference values.
"""

SPEED_OF_LIGHT = 3.0e8      # m/s
PLANCK = 6.62607015e-34     # J s
BOLTZMANN = 1.380649e-23    # J/K
