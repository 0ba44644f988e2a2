int classify(int x, int y) {
    if (x > 0 && y > 0) {
        return 1;
    } else if (x < 0 || y < 0) {
        return -1;
    }
    while (x > 10) {
        x = x / 2;
    }
    switch (y) {
    case 1:
        return 2;
    case 2:
        return 3;
    default:
        break;
    }
    return x == y ? 4 : 0;
}
