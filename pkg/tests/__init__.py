"""Test suite for the cantor calculus"""
