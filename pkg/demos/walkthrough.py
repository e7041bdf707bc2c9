"""Follow one entry (ID 229) from its specifying data to K^4.

Run: python3 demos/walkthrough.py
"""
from coxfano.cones import effective_cone, moving_cone, ray_constellation
from coxfano.dataio import load_all
from coxfano.faces import git_fan, members, x_faces
from coxfano.intersection import fiber_polytope, intersection_basis, anticanonical_degree
from coxfano.isomorphy import canonical_form
from coxfano.validity import smoothable_flag, validate

entry = next(e for e in load_all() if e.id == "229")
d = entry.data()
print("Q =", d.Q)
print("g =", d.g)

rep = validate(d)
for c in rep.checks:
    print(" ", c)

print("Eff =", effective_cone(d.Q), " Mov =", moving_cone(d.Q))
print("constellation", ray_constellation(d.Q).multiplicities)
print("GIT rays", git_fan(d.Q, d.g).rays)
print("mu =", rep.mu, " -K =", rep.antik, " lambda =", rep.lam)

faces = x_faces(d.Q, d.g, rep.lam)
print(len(faces), "X-faces, e.g.", [tuple(i + 1 for i in members(m)) for m in faces[:4]])

P = fiber_polytope(d.Q, rep.antik)
print(f"fiber polytope of -K: {P.n_vertices} vertices, dimension {P.dim}")

q = intersection_basis(d.Q, rep.lam, rep.antik)
print("nef basis", q.a, q.b, "mixed degrees", [str(q.degree(k)) for k in range(6)])
print("K^4 =", anticanonical_degree(d), "(table:", entry.k4, ")")
print("smoothable flag", smoothable_flag(d, rep.lam))
print(canonical_form(d).key)
