import json
from fractions import Fraction

import pytest

from concyclic.certs import (
    canonical_json,
    check_main1_payload,
    circle_certificate,
    count_reps_payload,
    format_fraction,
    parse_fraction,
    prime_search_payload,
    split_payload,
    sphere_certificate,
    verify_certificate,
)
from concyclic.lattice import GramMatrix, QuadForm
from concyclic.svgplot import render_svg


def test_fraction_roundtrip():
    assert format_fraction(Fraction(3, 4)) == "3/4"
    assert format_fraction(0) == "0/1"
    assert parse_fraction("73/16") == Fraction(73, 16)
    assert parse_fraction(format_fraction(Fraction(-5, 8))) == Fraction(-5, 8)


def test_circle_certificate_z2():
    cert = circle_certificate(form=QuadForm(1, 0, 1), n_points=2)
    assert cert["kind"] == "circle"
    assert cert["input"] == {"form": [1, 0, 1]}
    assert cert["prime"]["p"] == 73
    assert cert["j"] == 3
    assert cert["center"] == ["3/4", "0/1"]
    assert cert["radius2"] == "73/16"
    assert cert["points"] == [[0, -2], [0, 2]]
    assert cert["verified"] is True
    assert verify_certificate(cert)


def test_circle_certificate_from_gram():
    cert = circle_certificate(gram=GramMatrix(((1, 0), (0, 1))), n_points=3)
    assert cert["input"] == {"gram": {"dim": 2, "entries": [[1, 0], [0, 1]]}}
    assert cert["count"] == 3
    assert verify_certificate(cert)


def test_circle_certificate_requires_single_input():
    with pytest.raises(ValueError):
        circle_certificate(form=QuadForm(1, 0, 1), gram=GramMatrix(((1, 0), (0, 1))), n_points=1)
    with pytest.raises(ValueError):
        circle_certificate(n_points=1)


def test_certificates_are_byte_identical():
    a = canonical_json(circle_certificate(form=QuadForm(3, 2, 5), n_points=7))
    b = canonical_json(circle_certificate(form=QuadForm(3, 2, 5), n_points=7))
    assert a == b
    assert a.endswith("\n")


def test_json_roundtrip_reverifies():
    cert = circle_certificate(form=QuadForm(2, 1, 3), n_points=4)
    text = canonical_json(cert)
    parsed = json.loads(text)
    assert verify_certificate(parsed)


def test_tampered_certificate_fails():
    cert = circle_certificate(form=QuadForm(1, 0, 1), n_points=2)
    bad = json.loads(canonical_json(cert))
    bad["points"][0] = [1, 1]
    assert not verify_certificate(bad)
    bad2 = json.loads(canonical_json(cert))
    bad2["points"] = bad2["points"][:1]
    bad2["count"] = 1
    assert not verify_certificate(bad2)  # shell re-enumeration finds both points


def test_sphere_certificate():
    cert = sphere_certificate(gram=GramMatrix(((1, 0, 0), (0, 1, 0), (0, 0, 1))), n_points=2)
    assert cert["kind"] == "sphere"
    assert cert["center"] == ["3/4", "0/1", "1/16"]
    assert cert["radius2"] == "1169/256"
    assert cert["points"] == [[0, -2, 0], [0, 2, 0]]
    assert len(cert["lift_trace"]) == 1
    assert cert["lift_trace"][0]["chosen_s"] == "1/16"
    assert verify_certificate(cert)


def test_small_payloads():
    assert count_reps_payload(3, 7, 4) == {"count": 10}
    assert split_payload(-7, 2) == {"type": "split"}
    ps = prime_search_payload(4, 1)
    assert ps == {"n": 4, "a": 1, "p": 73, "x1": 3, "y1": 4}
    rep = check_main1_payload(3, 7, 5)
    assert rep["pass"] is True
    assert rep["counts"] == [2, 4, 6, 8, 10, 12]


def test_svg_rendering():
    cert = circle_certificate(form=QuadForm(1, 0, 1), n_points=2)
    svg = render_svg(cert)
    assert svg.startswith("<svg")
    assert svg == render_svg(cert)  # deterministic
    assert svg.count('class="on-circle"') == 2


def test_svg_one_point():
    cert = circle_certificate(form=QuadForm(1, 0, 1), n_points=1)
    svg = render_svg(cert)
    assert svg.count('class="on-circle"') == 1


def test_svg_skew_embedding():
    cert = circle_certificate(form=QuadForm(1, 1, 1), n_points=2)
    svg = render_svg(cert)
    assert svg.count('class="on-circle"') == 2


def test_svg_rejects_spheres():
    cert = sphere_certificate(gram=GramMatrix(((1, 0, 0), (0, 1, 0), (0, 0, 1))), n_points=1)
    with pytest.raises(ValueError):
        render_svg(cert)
