#! /usr/bin/python3
from lsclib.test import conftest  # this is require near the top to do setup of the test suite
from lsclib.test import util_test


def test_vector(module, method, inputs, outputs, error, comment):
    """Test the outputs of unit test vector."""
    util_test.check_outputs(module, method, inputs, outputs, error, comment)
