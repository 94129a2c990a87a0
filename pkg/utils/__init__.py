"""Utility modules for random instances and the bounded ordinal oracle"""
