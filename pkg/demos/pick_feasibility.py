"""Feasibility of interpolation data under the all-ones kernel.

For two nodes 0 and x with targets 0 and y the question "is there a
multiplier of norm at most one doing this" has a clean answer: yes
exactly when |y| <= x.  The solver decides it from positivity of a
2x2 matrix; this script sweeps y across that boundary, then repeats
the experiment with two-dimensional ball nodes where the same matrix
criterion applies verbatim.
"""

from pickdisc.pick import PickProblem, pick_feasible
from pickdisc.seqkernel import CoefficientSequence

ONES = CoefficientSequence.ones(256)


def sweep_scalar():
    x = 0.6
    print(f"nodes 0 and {x}, target at the origin pinned to 0")
    print(f"{'y':>6}  {'min eigenvalue':>15}  verdict")
    for y in (0.0, 0.2, 0.4, 0.59, 0.6, 0.61, 0.8):
        problem = PickProblem(ONES, 1, ((0j,), (x,)), (0j, y))
        report = pick_feasible(problem)
        print(f"{y:6.2f}  {report.min_eigenvalue:15.3e}  {report.is_psd}")
    print("the flip happens at y = x, where the matrix is exactly singular\n")


def sweep_ball():
    nodes = ((0j, 0j), (0.3, 0.4))       # second node has euclidean norm 0.5
    print("two-dimensional nodes (0,0) and (0.3, 0.4), norm 0.5")
    for t in (0.3, 0.5, 0.7):
        problem = PickProblem(ONES, 2, nodes, (0j, t))
        report = pick_feasible(problem)
        print(f"  target {t}: feasible = {report.is_psd}")
    print("same rule, with the node norm playing the role of x")


if __name__ == "__main__":
    sweep_scalar()
    sweep_ball()
