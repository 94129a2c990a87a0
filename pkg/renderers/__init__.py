"""Rendering modules for ordinals, spaces and points"""
