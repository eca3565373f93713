import json
import pathlib

import pytest

import sdc

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "corpus"


def test_generate_simplex_has_exact_coordinates():
    c = sdc.generate("simplex", d=3)
    assert c["facets"] == [[1, 2, 3, 4]]
    assert c["vertices"][1]["coords"] == ["1", "0", "0"]


def test_derived_subdivision_counts():
    facets, carriers = sdc.sd([[1, 2, 3]], m=1)
    assert len(facets) == 6
    assert len(carriers) == 7
    assert len(sdc.sd([[1, 2, 3]], m=2)[0]) == 36


def test_link_and_free_faces():
    assert sdc.link([1], [[1, 2, 3]]) == [[2, 3]]
    assert sdc.free_faces([[1, 2]]) == [[1], [2]]
    assert sdc.euler_characteristic([[1, 2], [2, 3], [1, 3]]) == 0


def test_collapse_certificate_round_trips_through_checker():
    outcome, cert = sdc.collapse_search([[1, 2, 3], [3, 4]])
    assert outcome == "certificate"
    assert cert["kind"] == "collapse"
    ok, kind, _ = sdc.check_certificate(cert)
    assert ok and kind == "collapse"
    cert["steps"] = cert["steps"][1:]
    assert not sdc.check_certificate(cert)[0]


def test_negative_controls():
    assert sdc.collapse_search(sdc.generate("dunce-hat"))[0] == "refuted"
    cycle = [[i, (i + 1) % 6] for i in range(6)]
    assert sdc.is_nonevasive(cycle)[0] == "refuted"
    assert sdc.is_nonevasive([[1], [2]])[0] == "refuted"


def test_budget_exhaustion_is_reported():
    outcome, cert = sdc.collapse_search(sdc.generate("simplex", d=3), strategy="backtracking", budget=1)
    assert outcome == "budget-exhausted"
    assert cert is None


def test_convex_pipeline():
    outcome, cert = sdc.pipeline("convex", sdc.generate("simplex", d=3))
    assert outcome == "certificate"
    assert len(cert["complex"]) == 24
    assert sdc.check_certificate(cert)[0]


def test_star_shaped_pipeline_on_star_polygon():
    outcome, cert = sdc.pipeline("star-shaped", sdc.generate("star-polygon", n=5, ratio="3"))
    assert outcome == "certificate"
    assert cert["kind"] == "ne"
    assert cert["report"]["subdivisions"] == 0
    assert sdc.check_certificate(cert)[0]


def test_hudson_and_boundary_pipelines():
    tri = sdc.load_complex(CORPUS / "tri.json")
    split = sdc.load_complex(CORPUS / "tri_centroid.json")
    outcome, cert = sdc.pipeline("hudson", tri, subdivision=split)
    assert outcome == "certificate" and sdc.check_certificate(cert)[0]
    outcome, cert = sdc.pipeline("boundary", tri)
    assert outcome == "certificate" and sdc.check_certificate(cert)[0]


def test_shelling_certificate():
    cert = sdc.shell(sdc.load_complex(CORPUS / "octahedron.json"), [1])
    assert cert["kind"] == "shelling"
    assert cert["star_size"] == 4
    assert sdc.check_certificate(cert)[0]


def test_golden_file_matches():
    golden = (CORPUS.parent / "tests" / "acceptance" / "golden" / "convex_tet.json").read_text()
    _, cert = sdc.pipeline("convex", sdc.load_complex(CORPUS / "tet.json"))
    assert json.dumps(cert, indent=2) == json.dumps(json.loads(golden), indent=2)


def test_errors_map_to_python_exceptions():
    with pytest.raises(sdc.InputError):
        sdc.generate("no-such-complex")
    with pytest.raises(sdc.Error):
        sdc.pipeline("convex", sdc.generate("star-polygon", n=5))
    with pytest.raises(sdc.InputError):
        sdc.check_certificate("{not json")
    assert issubclass(sdc.InputError, sdc.Error)
