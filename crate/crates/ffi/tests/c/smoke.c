#include <stdio.h>
#include "bqg.h"

int main(void) {
    BqgInstance *h = NULL;
    if (bqg_instance_from_preset("s3-twist", &h) != BQG_STATUS_OK) {
        fprintf(stderr, "%s\n", bqg_last_error());
        return 1;
    }
    uintptr_t n = 0, total = 0;
    bqg_class_count(h, &n);
    for (uintptr_t x = 0; x < n; x++) {
        uintptr_t d = 0;
        bqg_class_dim(h, x, &d);
        total += d * d;
    }
    uintptr_t m = 0;
    BqgStatus s = bqg_fusion(h, 0, 0, n, &m);
    bqg_instance_free(h);
    printf("%lu %lu %d\n", (unsigned long)n, (unsigned long)total, (int)s);
    return 0;
}
