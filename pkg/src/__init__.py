# Wavecrest: ondas de gravedad en coordenadas holomorfas
