"""Exact tools for specifying data of Fano fourfolds with a trinomial Cox ring."""
