"""Enumerating self-maps and classifying them up to homotopy.

For each bundled algebra: put one unknown on every degree-matching target
monomial, expand the chain-map condition into polynomial equations, solve
them into families, and collapse the families into homotopy classes.  The
three algebras end with 2, 2 and 3 classes, and self-equivalence groups
trivial, trivial and of order two.
"""

from dgalgebra import (
    classify_homotopy_set,
    constraint_system,
    corpus,
    generic_ansatz,
    self_equivalence_group,
    solve_structured,
)
from dgalgebra.parser import parse_presentation

for name in ("ex51", "ex52", "ex53"):
    algebra = parse_presentation(corpus.read(f"{name}.dga")).presentation
    print("=" * 72)
    print(f"{name}: generators", ", ".join(
        f"{g.name}({g.degree})" for g in algebra.generators
    ))

    ansatz = generic_ansatz(algebra, algebra)
    print(f"  generic self-map carries {len(ansatz.unknowns)} unknowns")

    system = constraint_system(ansatz)
    print(f"  chain-map condition yields {len(system.equations)} equations:")
    for eq in system.equations:
        print("    ", eq)

    families = solve_structured(system)
    print(f"  solution families: {len(families)}")
    for i, family in enumerate(families):
        fixed = {k: str(v) for k, v in sorted(family.fixed.items())}
        print(f"    family {i}: fixed {fixed}")
        if family.free:
            print(f"      free parameters {family.free}")
            deps = {k: str(v) for k, v in sorted(family.dependent.items())}
            print(f"      dependent {deps}")

    result = classify_homotopy_set(algebra, algebra)
    print(f"  homotopy classes: {len(result.classes)}")
    for cls in result.classes:
        images = ", ".join(
            f"{n} -> {cls.representative.images[n]}"
            for n in algebra.generator_names()
        )
        print("    representative:", images)

    group = self_equivalence_group(algebra)
    print(f"  self-equivalence group: {group.label}")
