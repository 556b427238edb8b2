"""Weight gradings and infinitely many homotopy classes.

A positive weight grading preserved by the differential yields, for each
nonzero rational, a diagonal automorphism scaling every weight-w generator
by lambda**w.  Composing any homotopically nontrivial map with powers of
such an automorphism produces pairwise non-homotopic maps: the homotopy set
is infinite.  The bundled corpus algebras admit no such grading, which is
how they manage to have finite homotopy sets.
"""

from fractions import Fraction

from dgalgebra import (
    Morphism,
    WeightAssignment,
    corpus,
    find_weight_assignment,
    phi_lambda,
    verify_infinite_family,
)
from dgalgebra.parser import parse_presentation

two_stage = parse_presentation(corpus.read("two_stage.dga")).presentation
print("weight search on the two-stage algebra:")
result = find_weight_assignment(two_stage)
print("  solution space dimension:", result.solution_dimension)
print("  positive integral certificate:", result.certificate)

assignment = WeightAssignment.from_generators(two_stage)
phi = phi_lambda(assignment, Fraction(3))
print("  phi_3 images:", {n: str(e) for n, e in phi.images.items()})

print("\nweight search on the corpus algebras (none admits positive weights):")
for name in ("ex51", "ex52", "ex53"):
    algebra = parse_presentation(corpus.read(f"{name}.dga")).presentation
    result = find_weight_assignment(algebra)
    print(
        f"  {name}: solution dimension {result.solution_dimension},"
        f" universal: {result.universal}"
    )

print("\ndesk-scale infinite family: map a free degree-2 generator onto a")
print("weighted one, scale by lambda = 2, and certify six composites distinct:")
src = parse_presentation(corpus.read("free_even.dga")).presentation
tgt = parse_presentation(corpus.read("free_even_weighted.dga")).presentation
f = Morphism(src, tgt, {"w": tgt.gen("x")})
report = verify_infinite_family(f, "target", Fraction(2), 5)
print("  pairs checked:", len(report.pairs), "- all distinct:", report.all_distinct)
print("  scale factors (i, j, lambda^2i - lambda^2j):")
for p in report.pairs[:5]:
    print(f"    ({p.i}, {p.j}): {p.scale_factor}")
