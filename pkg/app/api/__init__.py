"""Capa de presentación: CLI con click"""
