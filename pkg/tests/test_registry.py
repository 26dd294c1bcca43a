import pytest

from readlab import registry

EXPECTED_SUBGROUP_SIZES = {
    "WoKF": 16, "WBKF": 16, "OSKF": 16,
    "EnDF": 6, "EnGF": 22,
    "PhrF": 48, "TrSF": 6, "POSF": 55,
    "VarF": 12, "TTRF": 5, "PsyF": 15, "WorF": 24,
    "ShaF": 8, "TraF": 6,
}


def test_registry_has_255_features():
    assert len(registry.registry()) == 255


def test_subgroup_sizes():
    sizes = {}
    for d in registry.registry():
        sizes[d.subgroup] = sizes.get(d.subgroup, 0) + 1
    assert sizes == EXPECTED_SUBGROUP_SIZES


def test_branch_sizes():
    assert len(registry.branch_codes("AdSem")) == 48
    assert len(registry.branch_codes("Disco")) == 28
    assert len(registry.branch_codes("Synta")) == 109
    assert len(registry.branch_codes("LxSem")) == 56
    assert len(registry.branch_codes("ShaTr")) == 14


def test_indices_dense_and_codes_unique():
    descriptors = registry.registry()
    assert [d.index for d in descriptors] == list(range(1, 256))
    assert len({d.code for d in descriptors}) == 255


def test_all_codes_pass_naming_rules():
    for d in registry.registry():
        assert d.validate_code(), d.code


def test_known_descriptor():
    d = registry.registry()[0]
    assert d.code == "WRich05_S"
    assert d.subgroup == "WoKF"
    assert d.branch == "AdSem"
    assert d.kind == "S"


def test_resolve_t1_is_everything():
    assert registry.resolve_set("T1") == registry.all_codes()


def test_resolve_h1_width():
    assert len(registry.resolve_set("H1")) == 76


def test_resolve_l2_width():
    # Synta + LxSem minus PhrF: 109 + 56 - 48
    assert len(registry.resolve_set("L2")) == 117


@pytest.mark.parametrize("name,width", [
    ("T2", 207), ("T3", 227), ("L1", 165), ("L3", 153), ("L4", 110),
    ("E1", 93), ("E2", 87), ("E3", 39), ("P1", 120), ("P2", 120), ("P3", 132),
])
def test_set_widths(name, width):
    assert len(registry.resolve_set(name)) == width


def test_set_algebra():
    t1 = set(registry.resolve_set("T1"))
    adsem = set(registry.branch_codes("AdSem"))
    disco = set(registry.branch_codes("Disco"))
    assert set(registry.resolve_set("T2")) == t1 - adsem
    assert set(registry.resolve_set("T3")) == t1 - disco
    p2 = set(registry.resolve_set("P2"))
    varf = {d.code for d in registry.registry() if d.subgroup == "VarF"}
    assert set(registry.resolve_set("P3")) == p2 | varf


def test_resolved_sets_keep_registry_order():
    order = {code: i for i, code in enumerate(registry.all_codes())}
    for name in registry.SET_DEFINITIONS:
        codes = registry.resolve_set(name)
        assert codes == sorted(codes, key=order.__getitem__)
        assert len(codes) == len(set(codes))


def test_unknown_set_raises():
    with pytest.raises(registry.RegistryError, match="Z9"):
        registry.resolve_set("Z9")
