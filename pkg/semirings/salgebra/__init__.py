"""S-algebras, the star subvariety and its coreflector."""
