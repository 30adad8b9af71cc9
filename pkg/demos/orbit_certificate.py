"""
Certifying a finite forward orbit
=================================
"""

import json

from orbita import certificate_to_json, detect_orbit, parse_map, parse_point

# z^2 - 29/16 has bad reduction only at 2 (its resultant is 2^16) and a
# wealth of rational preperiodic points with denominator 4
m = parse_map("z^2 - 29/16")

for start in ("-1/4", "7/4", "3/4"):
    cert = detect_orbit(m, parse_point(start))
    print(f"start {start}: tail m={cert.tail_length}, period n={cert.period}")
    print("   ", " -> ".join(str(P) for P in cert.points))

# a certificate is a checked object: tampering with any field is caught by
# run_certificate_checks, and certificate_to_json re-runs the checks before
# serializing. The JSON keeps integers as strings on purpose.
cert = detect_orbit(m, parse_point("3/4"))
doc = certificate_to_json(cert)
print(json.dumps(doc, indent=2)[:400], "...")

# orbits that do not close within budget come back as UndecidedOrbit rather
# than an exception; the CLI turns that into exit status 3
grow = detect_orbit(parse_map("z^2 + 1"), parse_point("1"), max_steps=10)
print(type(grow).__name__, "-", grow.reason)
