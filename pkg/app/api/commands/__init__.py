"""Subcomandos de la línea de comandos"""
