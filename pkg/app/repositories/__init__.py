"""Tablas de datos integradas y lectura de archivos de especificación"""
