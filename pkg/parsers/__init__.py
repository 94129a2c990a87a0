"""Parsing modules for the ordinal and space expression grammars"""
