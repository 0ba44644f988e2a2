/* Small helpers with no smells. */
#include <stddef.h>

/* Sum of the first n elements. */
int sum(const int *xs, size_t n) {
    int total = 0;
    for (size_t i = 0; i < n; i++) {
        total += xs[i];
    }
    return total;
}

/* Larger of two values. */
int max2(int a, int b) {
    return a > b ? a : b;
}
