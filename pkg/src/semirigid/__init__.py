"""Unit-free rigidity, unit adjoining and decategorification for finitary semigroup categories."""
