"""Exact verification toolkit for two genus-4 curve families.

Subpackages of interest:

- multipoly / numberfield / intfactor: the exact computation core
- quaternion: quaternion algebras over real cyclotomic fields and their
  2x2 real splittings
- trianglestacks: triangle group data, degrees, and disk tessellations
- families: the two one-parameter families, their discriminants, semistable
  reduction charts, and differential bookkeeping
- hypergeom: local exponents and eigenvector line counts for the associated
  cyclic covers
- cli / report: the `verify` command line tool and its JSON report
"""

__version__ = "0.1.0"
