"""
This module writes and reads XML configuration files for the calculator.

A configuration file has one tag per parameter group (see `cplattice.common.params`) and
one child tag per attribute of the group:

    <?xml version="1.0" ?>
    <root>
        <calculator>
            <enumeration_limit>20</enumeration_limit>
            <output_format>table</output_format>
            <json_indent>2</json_indent>
            <log_level>WARNING</log_level>
        </calculator>
    </root>

Notes
-----
The text of a tag is converted with the type of the attribute's default value, so new
attributes only have to be added to the parameter class. Tags missing from a file keep
their default values.
"""

import logging
import xml.dom.minidom

from lxml import etree

from cplattice.common.errors import InputReadError, ParseError, SchemaError
from cplattice.common.params import BaseParams, CalculatorParams

logger = logging.getLogger(__name__)

ROOT_TAG = "root"
TRUE_LITERALS = {"true", "1"}


def create_config_file(path: str, calc_params: CalculatorParams) -> None:
    """
    Creates an XML file with the calculator configuration.

    Parameters
    ----------
    path : str
        The file path where the configuration XML will be saved.
    calc_params : CalculatorParams
        Parameters to store.
    """
    root_tag = etree.Element(ROOT_TAG)
    group_tag = etree.SubElement(root_tag, calc_params.group_name)
    for key, value in calc_params.__dict__.items():
        param_tag = etree.SubElement(group_tag, key)
        param_tag.text = str(value)

    xml_string = etree.tostring(
        etree.ElementTree(root_tag), pretty_print=True, xml_declaration=True, encoding="utf-8"
    ).decode()
    pretty_xml_string = "\n".join(
        line for line in xml.dom.minidom.parseString(xml_string).toprettyxml().split("\n") if line.strip()
    )
    with open(path, "w", encoding="utf-8") as file:
        file.write(pretty_xml_string + "\n")


def _fill_group(group_tag, group: BaseParams) -> None:
    for key, value in group.__dict__.items():
        param_tag = group_tag.find(key)
        if param_tag is None or param_tag.text is None:
            continue
        text = param_tag.text.strip()
        field_type = type(value)
        try:
            if field_type is bool:
                group.__dict__[key] = text.lower() in TRUE_LITERALS
            else:
                group.__dict__[key] = field_type(text)
        except ValueError:
            raise SchemaError(f"{group.group_name}/{key}", f"cannot convert {text!r} to {field_type.__name__}") from None


def read_xml_config(path: str) -> CalculatorParams:
    """
    Reads the calculator configuration from an XML file.

    Parameters
    ----------
    path : str
        The path to the configuration XML file.

    Returns
    -------
    CalculatorParams
        Defaults overwritten by the values found in the file.

    Raises
    ------
    InputReadError
        If the file cannot be read.
    ParseError
        If the file is not well-formed XML.
    SchemaError
        If a value cannot be converted or is out of range.
    """
    try:
        tree = etree.parse(path)
    except OSError as err:
        raise InputReadError(f"cannot read configuration {path}: {err}") from None
    except etree.XMLSyntaxError as err:
        line, column = err.position
        raise ParseError(err.msg, line, column) from None

    calc_params = CalculatorParams()
    group_tag = tree.getroot().find(calc_params.group_name)
    if group_tag is not None:
        _fill_group(group_tag, calc_params)
    try:
        calc_params.validate()
    except ValueError as err:
        raise SchemaError(calc_params.group_name, str(err)) from None
    logger.debug("configuration read from %s: %s", path, calc_params)
    return calc_params
