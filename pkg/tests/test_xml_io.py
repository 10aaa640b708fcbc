import pytest

from cplattice.common.errors import InputReadError, ParseError, SchemaError
from cplattice.common.params import CalculatorParams
from cplattice.io.xml_io import create_config_file, read_xml_config


def test_written_configuration_reads_back(tmp_path):
    path = tmp_path / "config.xml"
    calc_params = CalculatorParams()
    calc_params.enumeration_limit = 7
    calc_params.output_format = "json"
    calc_params.log_level = "DEBUG"
    create_config_file(str(path), calc_params)

    text = path.read_text(encoding="utf-8")
    assert text.startswith('<?xml version="1.0" ?>')
    assert "<enumeration_limit>7</enumeration_limit>" in text

    loaded = read_xml_config(str(path))
    assert loaded.__dict__ == calc_params.__dict__


def test_missing_tags_keep_defaults(tmp_path):
    path = tmp_path / "partial.xml"
    path.write_text("<root><calculator><json_indent>4</json_indent></calculator></root>", encoding="utf-8")
    loaded = read_xml_config(str(path))
    assert loaded.json_indent == 4
    assert loaded.enumeration_limit == CalculatorParams().enumeration_limit
    assert loaded.output_format == "table"


def test_data_configuration(data_dir):
    loaded = read_xml_config(str(data_dir / "config.xml"))
    assert loaded.enumeration_limit == 2
    assert loaded.output_format == "json"
    assert loaded.json_indent == 0


@pytest.mark.parametrize(
    "body, field",
    [
        ("<enumeration_limit>many</enumeration_limit>", "calculator/enumeration_limit"),
        ("<output_format>yaml</output_format>", "calculator"),
        ("<log_level>LOUD</log_level>", "calculator"),
        ("<json_indent>-1</json_indent>", "calculator"),
    ],
)
def test_bad_values(tmp_path, body, field):
    path = tmp_path / "bad.xml"
    path.write_text(f"<root><calculator>{body}</calculator></root>", encoding="utf-8")
    with pytest.raises(SchemaError) as info:
        read_xml_config(str(path))
    assert info.value.field == field


def test_unreadable_configuration(tmp_path):
    with pytest.raises(InputReadError):
        read_xml_config(str(tmp_path / "missing.xml"))
    path = tmp_path / "broken.xml"
    path.write_text("<root><calculator></root>", encoding="utf-8")
    with pytest.raises(ParseError):
        read_xml_config(str(path))
