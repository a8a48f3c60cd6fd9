#include <stdio.h>
#include <string.h>
#include "smallgen.h"

int main(void) {
    int64_t coeffs[] = {-2, 0, 0, 1};
    SmallgenField *k = NULL;
    if (smallgen_field_from_coeffs(coeffs, 4, &k) != SMALLGEN_STATUS_OK) return 1;
    size_t d = 0;
    smallgen_field_degree(k, &d);
    char *disc = NULL;
    bool exact = false;
    smallgen_field_discriminant(k, &disc, &exact);
    printf("%zu %s %d\n", d, disc, exact);
    smallgen_string_free(disc);
    smallgen_field_free(k);

    int64_t bad[] = {-1, 0, 1};
    SmallgenStatus s = smallgen_field_from_coeffs(bad, 3, &k);
    printf("%d %s\n", (int)s, smallgen_last_error());
    return 0;
}
