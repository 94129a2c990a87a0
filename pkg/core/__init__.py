"""Core calculus modules: ordinals, canonical spaces, points and correspondences"""
