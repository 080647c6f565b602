from rgc.families import edge_count, enumerate_basis


def test_edge_count_formula():
    # E = 2g - 2 + m + n + k with one output per white vertex convention
    assert edge_count(0, 1, 2, 0) == 1
    assert edge_count(0, 1, 2, 1) == 2
    assert edge_count(1, 1, 0, 2) == 3


def test_tw_basis_sizes_for_cylinder_slice():
    sizes = [len(enumerate_basis("tw", 1, 0, 1, 2, k)) for k in range(4)]
    assert sizes == [1, 3, 10, 35]


def test_tw_basis_sizes_genus_one():
    sizes = [len(enumerate_basis("tw", 1, 1, 1, 0, k)) for k in range(4)]
    assert sizes == [0, 0, 2, 7]


def test_chgrav_is_spanned_by_trivalent_black_graphs():
    for k in range(3):
        for g in enumerate_basis("chgrav", 2, 0, 2, 1, k):
            for kind, _lab, cyc in g.vertices:
                if kind == "b":
                    assert len(cyc) == 3


def test_chgrav_sizes_subset_of_tw():
    for k in range(3):
        tw = len(enumerate_basis("tw", 2, 0, 2, 1, k))
        ch = len(enumerate_basis("chgrav", 2, 0, 2, 1, k))
        assert ch <= tw


def test_trees_have_genus_zero_and_one_boundary_tail():
    sizes = [len(enumerate_basis("trees", 1, 0, 1, 3, k)) for k in range(3)]
    assert sizes == [3, 2, 0]
    for g in enumerate_basis("trees", 1, 0, 1, 3, 1):
        assert g.genus() == 0


def test_basis_sizes_independent_of_d_parity_class():
    # orientation conventions differ with d, but orbit counts only depend on
    # d mod 2 through the sign rule killing symmetric graphs
    for k in range(3):
        a = len(enumerate_basis("tw", 1, 0, 2, 1, k))
        b = len(enumerate_basis("tw", 3, 0, 2, 1, k))
        assert a == b
