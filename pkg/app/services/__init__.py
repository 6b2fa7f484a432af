"""Capa de negocio: un servicio por área de cálculo"""
