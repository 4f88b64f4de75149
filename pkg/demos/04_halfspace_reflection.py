"""Half-space warm-up: total reflection and the shrinking boundary layer.

A plane wave hits an anisotropic half-space whose normal permittivity is
2 rho^2.  Once the transmitted wavenumber turns imaginary the interface
reflects with |h_sc| = |h_in| exactly, the reflection coefficient drifts to
-1 at first order in rho, and the transmitted field squeezes into a layer
of width ~rho whose integrated content vanishes like rho^2.
"""

from cloaksim import halfspace as hs

OMEGA, KZ = 1.0, 0.5

print("   rho     Im kx+        h_sc/h_in              |mass|      mass/rho^2")
params_list = []
for rho in (1e-1, 3e-2, 1e-2, 3e-3, 1e-3):
    p = hs.HalfspaceParams(omega=OMEGA, kz=KZ, rho=rho)
    params_list.append(p)
    t = hs.decay_rate(p)
    h_plus, h_sc = hs.solve_amplitudes(p)
    mass = hs.transmitted_mass(p, 2.0)
    print(f"  {rho:7.0e}  {t:9.3f}  {h_sc.real:+.6f}{h_sc.imag:+.6f}i  "
          f"{abs(mass):12.4e}  {abs(mass) / rho**2:10.4f}")

phi = hs.TestFunction1D(-1.5, -0.2)
rows, exponent = hs.limit_study(params_list, phi, halfwidth=2.0)
print()
print(f"fitted transmitted-mass exponent in rho: {exponent:.4f}")
print("(the boundary-layer content is O(rho^2): the layer thins faster than")
print(" its amplitude grows, so it carries no surface term in the limit)")

print()
print("=== vacuum side approaches the standing wave ===")
for p in params_list[2:]:
    got = hs.reflected_pairing(p, phi, -2.0)
    ref = hs.standing_wave_pairing(p, phi, -2.0)
    print(f"  rho={p.rho:7.0e}   pairing error vs limit field: "
          f"{abs(got - ref):.3e}")
