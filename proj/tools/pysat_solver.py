#!/usr/bin/env python3
"""Solver contract wrapper around PySAT's CaDiCaL: DIMACS path in argv[1], status line on stdout."""
import sys

from pysat.formula import CNF
from pysat.solvers import Cadical195


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: pysat_solver.py <file.cnf>", file=sys.stderr)
        return 2
    cnf = CNF(from_file=sys.argv[1])
    with Cadical195(bootstrap_with=cnf.clauses) as s:
        sat = s.solve()
    print("s SATISFIABLE" if sat else "s UNSATISFIABLE", flush=True)
    return 10 if sat else 20


if __name__ == "__main__":
    sys.exit(main())
