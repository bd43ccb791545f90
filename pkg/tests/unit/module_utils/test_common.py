# -*- coding: utf-8 -*-
# Copyright: Raphaël de Gail
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)
import unittest

from stlc_nbe.module_utils.common import navigate_hash, single_key


class NavigateHashTestCase(unittest.TestCase):
    """A class to test the navigate_hash function.
    """
    def test_one_level(self):
        """Test the navigation with one node in the tree.
        """
        value = {"var": 3}
        self.assertEqual(navigate_hash(value, ["var"]), 3)

    def test_multilevel(self):
        """Test the navigation through a tagged term object.
        """
        value = {"lam": {"ann": "Bool", "body": {"var": 0}}}
        self.assertEqual(navigate_hash(value, ["lam", "body", "var"]), 0)

    def test_default(self):
        """Test the default value when a key is missing.
        """
        value = {"app": {"fun": {"var": 0}}}
        default = "not found"
        self.assertEqual(navigate_hash(value, ["app", "arg"], default), default)

    def test_leaf_on_path(self):
        """Test the default value when the path goes through a leaf.
        """
        value = {"bool": True}
        self.assertIsNone(navigate_hash(value, ["bool", "value"]))

    def test_null_value_is_found(self):
        """Test that an explicit null is returned rather than the default.
        """
        value = {"lam": {"ann": None}}
        self.assertIsNone(navigate_hash(value, ["lam", "ann"], "absent"))


class SingleKeyTestCase(unittest.TestCase):
    """A class to test the single_key function.
    """
    def test_tag(self):
        """Test the tag of a one-key object.
        """
        self.assertEqual(single_key({"if": {}}), "if")

    def test_not_tagged(self):
        """Test objects that are not tagged.
        """
        self.assertIsNone(single_key({"var": 0, "bool": True}))
        self.assertIsNone(single_key({}))
        self.assertIsNone(single_key("Bool"))
