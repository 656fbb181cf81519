"""Bundled lexicon, stopword, and calibration resources."""
