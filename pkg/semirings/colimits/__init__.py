"""Coproducts, coequalizers, pushouts and finite colimits of S-algebras."""
