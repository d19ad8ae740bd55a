# Scripts de ejecución de los experimentos
