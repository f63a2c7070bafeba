"""First-order descriptive complexity laboratory for finite graphs.

Subpackages:
  graphs        -- bitset graph substrate, sampling, isomorphism, graph6
  formulas      -- first-order formula AST, parser, evaluator, metrics
  engine        -- exact Ehrenfeucht game solver and sentence synthesis
  certificates  -- verifiable lower/upper bound witnesses
  asymptotics   -- closed-form numeric predictions
  arith         -- hypergraph arithmetization machinery
  bench         -- seeded experiment runner
  service       -- HTTP API for interactive games
"""

__version__ = "0.1.0"
