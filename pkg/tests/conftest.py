import pytest

from equivariant_ops.multigraph import Multigraph, NULL_GRAPH

# 15x15 evaluation of the p=3 matching tensors on the columns with two e_2's,
# rows in matching enumeration order, columns (1,2),(1,3),...,(5,6)
PRINTED_M = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0],
]

PRINTED_M_ROWS = [
    ((1, 2), (3, 4), (5, 6)), ((1, 2), (3, 5), (4, 6)), ((1, 2), (3, 6), (4, 5)),
    ((1, 3), (2, 4), (5, 6)), ((1, 3), (2, 5), (4, 6)), ((1, 3), (2, 6), (4, 5)),
    ((1, 4), (2, 3), (5, 6)), ((1, 4), (2, 5), (3, 6)), ((1, 4), (2, 6), (3, 5)),
    ((1, 5), (2, 3), (4, 6)), ((1, 5), (2, 4), (3, 6)), ((1, 5), (2, 6), (3, 4)),
    ((1, 6), (2, 3), (4, 5)), ((1, 6), (2, 4), (3, 5)), ((1, 6), (2, 5), (3, 4)),
]

PRINTED_K = [
    [1, 0, -1, 0, 0, 0, -1, 0, 1, 0, 1, -1, 1, -1, 0],
    [0, 1, -1, 0, 0, 0, 0, 0, 0, -1, 1, 0, 1, -1, 0],
    [0, 0, 0, 1, 0, -1, -1, 0, 1, 0, 0, 0, 1, -1, 0],
    [0, 0, 0, 0, 1, -1, 0, 0, 0, -1, 0, 1, 1, 0, -1],
    [0, 0, 0, 0, 0, 0, 0, 1, -1, 0, -1, 1, 0, 1, -1],
]

# connected classes with at most three edges, in census order
SMALL_CONNECTED = {
    "empty graph": NULL_GRAPH,
    "isolated vertex": Multigraph(1),
    "single edge": Multigraph(2, ((0, 1),)),
    "single loop": Multigraph(1, ((0, 0),)),
    "path of length two": Multigraph(3, ((0, 1), (1, 2))),
    "double edge": Multigraph(2, ((0, 1), (0, 1))),
    "loop and edge": Multigraph(2, ((0, 1), (1, 1))),
    "double loop": Multigraph(1, ((0, 0), (0, 0))),
    "path of length three": Multigraph(4, ((0, 1), (1, 2), (2, 3))),
    "star": Multigraph(4, ((0, 1), (0, 2), (0, 3))),
    "triangle": Multigraph(3, ((0, 1), (1, 2), (0, 2))),
    "path of length two with a double edge": Multigraph(3, ((0, 1), (0, 1), (1, 2))),
    "path of length two and one loop on the side": Multigraph(3, ((0, 1), (1, 2), (2, 2))),
    "path of length two and loop in the middle": Multigraph(3, ((0, 1), (1, 2), (1, 1))),
    "triple edge": Multigraph(2, ((0, 1), (0, 1), (0, 1))),
    "double edge with a loop": Multigraph(2, ((0, 1), (0, 1), (1, 1))),
    "one edge and one loop per side": Multigraph(2, ((0, 1), (0, 0), (1, 1))),
    "edge and two loops on the same side": Multigraph(2, ((0, 1), (1, 1), (1, 1))),
    "triple loop": Multigraph(1, ((0, 0), (0, 0), (0, 0))),
}

# the four classes for degree vector [2,2], in the order used for the P relation
P_CLASSES = [
    Multigraph(4, ((0, 1), (2, 2), (3, 3))),  # edge, two loops
    Multigraph(4, ((0, 1), (2, 3), (2, 3))),  # edge, double edge
    Multigraph(4, ((0, 2), (2, 3), (3, 1))),  # path of length three
    Multigraph(4, ((0, 2), (1, 2), (3, 3))),  # path of length two, loop
]

# the three classes for [0,3], in the order of the Q coefficients (1, -3, 2)
Q_CLASSES = [
    Multigraph(3, ((0, 0), (1, 1), (2, 2))),  # three loops
    Multigraph(3, ((0, 1), (0, 1), (2, 2))),  # double edge and loop
    Multigraph(3, ((0, 1), (1, 2), (0, 2))),  # triangle
]


@pytest.fixture(scope="session")
def acceptance_log(request):
    lines = []
    request.config._acceptance_lines = lines
    return lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
