#include <stdio.h>
#include <string.h>
#include "intbasis.h"

int main(void) {
    const int64_t terms[] = {0, 4, 1, 3, 0, -1};
    IbCurve *c = NULL;
    if (ib_curve_new(10007, terms, 2, &c) != IB_STATUS_OK) return 1;
    IbResult *r = NULL;
    if (ib_compute(c, IB_ALGORITHM_ALL, IB_VERIFY_FULL, 0, &r) != IB_STATUS_OK) return 2;
    size_t degs[4];
    for (size_t d = 0; d < ib_result_size(r); d++)
        if (ib_result_denominator_degree(r, d, &degs[d]) != IB_STATUS_OK) return 3;
    printf("%zu %zu %zu %zu\n", degs[0], degs[1], degs[2], degs[3]);
    if (strstr(ib_result_json(r), "\"agree\":true") == NULL) return 4;
    ib_result_free(r);
    ib_curve_free(c);
    IbCurve *bad = NULL;
    if (ib_curve_from_json("{\"p\":10007,\"f\":[[0,2,2]]}", &bad) != IB_STATUS_INPUT_ERROR) return 5;
    printf("%s\n", ib_last_error());
    return 0;
}
