"""Instantiate a few series templates and compare with their closed forms.

S1 is fine at every parameter; S42 validates but its printed mu is off.

Run: python3 demos/series_checks.py
"""
from coxfano.dataio import load_all
from coxfano.intersection import anticanonical_degree
from coxfano.series import InadmissibleParams, admissible_samples
from coxfano.validity import validate

templates = {e.id: e.template() for e in load_all() if e.is_series}

for ident in ("S1", "S4", "S42"):
    t = templates[ident]
    print(f"{ident}: params {t.params}, constraint {t.constraint!r}")
    for env in admissible_samples(t, count=4):
        d = t.instantiate(env)
        rep = validate(d)
        k4 = anticanonical_degree(d, lam=rep.lam) if rep.ok else None
        print(f"   {env}: valid={rep.ok} -K={rep.antik} (closed form {t.expected_antik(env)}) "
              f"mu={rep.mu} (closed form {t.expected_mu(env)}) K4={k4}")

try:
    templates["S4"].instantiate({"a": 2})
except InadmissibleParams as e:
    print("S4 at a=2:", e)
