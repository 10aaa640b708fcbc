"""
This module defines the class that encapsulates the calculator configuration:
enumeration bounds, output defaults and logging verbosity.

Classes
-------
BaseParams : A base class for configuration groups stored in configuration files.
CalculatorParams : Parameters shared by all commands of the calculator.

Usage
-----
Parameters are instantiated with defaults, optionally overwritten from an XML
configuration file (see `cplattice.io.xml_io.read_xml_config`) and then by
command-line flags.

Example
-------
# Raising the enumeration bound for a large instance
calc_params = CalculatorParams()
calc_params.enumeration_limit = 22
print(calc_params)
"""

OUTPUT_FORMATS = ("json", "table", "dot")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class BaseParams:
    """
    Base class for a group of configuration parameters.

    It should be inherited when defining a new parameter group!

    When adding a new attribute, it should be created inside the __init__ method
    and initialised with a value of the corresponding type: the configuration
    reader uses the type of the default value to convert the text stored in the file.

    Attributes
    ----------
    group_name : str
        Name of the group, used as the tag of the group in configuration files.
        Should be modified in the corresponding inheritor class.
    """
    group_name = "base"

    def __init__(self):
        pass

    def __str__(self) -> str:
        return self.group_name + ": " + str(self.__dict__)

    def __repr__(self) -> str:
        return self.group_name + ": " + str(self.__dict__)


class CalculatorParams(BaseParams):
    """
    Parameters of the calculator.

    Attributes
    ----------
    enumeration_limit : int
        Largest number of blocks for which pair enumeration and brute-force
        checks are attempted (their cost grows like 2^n).
    output_format : str
        Default output format, one of "json", "table", "dot".
    json_indent : int
        Indentation of JSON output.
    log_level : str
        Name of the logging level configured by the command-line interface.
    """
    group_name = "calculator"

    def __init__(self) -> None:
        super().__init__()
        self.enumeration_limit = 20
        self.output_format = "table"
        self.json_indent = 2
        self.log_level = "WARNING"

    def validate(self) -> None:
        """
        Checks the parameter values.

        Raises
        ------
        ValueError
            If a value is outside of its admissible range.
        """
        if self.enumeration_limit < 0:
            raise ValueError(f"enumeration_limit must be non-negative, got {self.enumeration_limit}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if self.json_indent < 0:
            raise ValueError(f"json_indent must be non-negative, got {self.json_indent}")
        if self.log_level.upper() not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {LOG_LEVELS}, got {self.log_level!r}")
