import copy
import json

import pytest

from kneserlab import certificates as certs
from kneserlab.corpus import Coloring, complete_graph, complete_uniform, cycle_graph, kneser_graph, min_element_coloring
from kneserlab.errors import InvalidInput
from kneserlab.signfan.fan import first_sign_size


@pytest.fixture(scope="module")
def cases():
    h = complete_uniform(5, 2)
    g = kneser_graph(h)
    c = min_element_coloring(h, 3)
    l = first_sign_size(3)
    return {
        "chi": certs.cert_chi(g),
        "chic": certs.cert_chic(cycle_graph(5)),
        "cd2": certs.cert_cd2(h),
        "alt": certs.cert_alt(h),
        "altmin": certs.cert_alt(h, minimize=True),
        "nice": certs.cert_nice(h),
        "xind": certs.cert_xind(cycle_graph(5)),
        "fan": certs.cert_fan_count(l),
        "chen": certs.cert_chen(l, 2),
        "circuit": certs.cert_circuit(l),
        "zigzag": certs.cert_zigzag(g, c, 3),
        "klm": certs.cert_klm(g, c, [1], [2, 3]),
        "ktt": certs.cert_ktt(g, c),
        "path": certs.cert_path(g, c, 3),
        "tristar": certs.cert_tristar(complete_graph(4)),
    }


def roundtrip(cert):
    return json.loads(json.dumps(cert))


def test_all_certificates_replay(cases):
    for name, cert in cases.items():
        assert certs.check(roundtrip(cert)) == [], name


def _bump_value(c):
    c["value"] = c["value"] + 1


def _conflict(c):
    u, v = c["params"]["graph"]["adj"][0]
    cols = c["witness"]["colors"]
    cols[v - 1] = cols[u - 1]


def _shrink_removed(c):
    c["witness"]["removed"] = c["witness"]["removed"][:-1]


def _flip_map(c):
    c["witness"]["map"]["values"][0] *= -1


def _chic(c):
    c["value"] = "2/1"


def _swap_sides(c):
    w = c["witness"]
    w["A"], w["B"] = w["B"], w["A"]


def _dup_ktt(c):
    w = c["witness"]
    w["b_side"][0] = w["a_side"][1]


def _drop_state(c):
    c["witness"]["states"].pop()


def _drop_chain(c):
    c["witness"]["chains"].pop()


def _chen(c):
    w = c["witness"]
    w["xs"], w["ys"] = w["ys"], w["xs"][::-1]


TAMPERS = {
    "chi": _conflict,
    "chic": _chic,
    "cd2": _shrink_removed,
    "alt": _bump_value,
    "xind": _flip_map,
    "fan": _bump_value,
    "chen": _chen,
    "circuit": _drop_chain,
    "zigzag": _swap_sides,
    "klm": _swap_sides,
    "ktt": _dup_ktt,
    "path": _drop_state,
    "tristar": _bump_value,
}


@pytest.mark.parametrize("name", sorted(TAMPERS))
def test_tampered_certificates_rejected(cases, name):
    cert = copy.deepcopy(roundtrip(cases[name]))
    TAMPERS[name](cert)
    assert certs.check(cert), name


def test_nice_certificate_value_checked(cases):
    cert = roundtrip(cases["nice"])
    cert["witness"]["sigma"] = None
    cert["value"] = False
    assert certs.check(cert)


def test_seed_recorded():
    cert = certs.make("chi", 1, None, {}, seed=7)
    assert cert["seed"] == 7


def test_unknown_and_malformed():
    with pytest.raises(InvalidInput):
        certs.check({"no": 1})
    with pytest.raises(InvalidInput):
        certs.check({"invariant": "bogus"})
    with pytest.raises(InvalidInput):
        certs.check({"invariant": "chi", "value": 3})


def test_missing_witness_rejected():
    g = cycle_graph(5)
    c = Coloring((1, 2, 1, 2, 3), 3)
    cert = certs.cert_ktt(g, c)
    assert cert["value"] is False
    assert certs.check(roundtrip(cert)) == ["no witness recorded"]
