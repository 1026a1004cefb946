#include <stdio.h>
#include <string.h>

#include "grd.h"

static int expect(const char *got, const char *want, const char *what) {
    if (strcmp(got, want) != 0) {
        fprintf(stderr, "%s: got %s, want %s\n", what, got, want);
        return 1;
    }
    return 0;
}

int main(void) {
    int failures = 0;
    char *s = NULL;

    if (grd_castelnuovo_number(21, 6, 24, &s) != GRD_STATUS_OK) return 10;
    failures += expect(s, "1385670", "N");
    grd_string_free(s);

    GrdSlopeReport *report = NULL;
    if (grd_slope_report(21, 6, 24, &report) != GRD_STATUS_OK) return 11;
    if (grd_slope_ratio(report, &s) != GRD_STATUS_OK) return 12;
    failures += expect(s, "2459/377", "ratio");
    grd_string_free(s);
    bool violates = false;
    grd_slope_violates(report, &violates);
    failures += !violates;
    grd_slope_free(report);

    GrdClass *beta = NULL;
    if (grd_eta_push(6, 2, 6, GRD_CLASS_LABEL_BETA, GRD_METHOD_ASSEMBLED, &beta) != GRD_STATUS_OK) return 13;
    if (grd_class_coefficient(beta, "psi", &s) != GRD_STATUS_OK) return 14;
    failures += expect(s, "-30", "psi");
    grd_string_free(s);
    grd_class_free(beta);

    if (grd_castelnuovo_number(3, 1, 2, &s) != GRD_STATUS_PRECONDITION) return 15;
    if (strlen(grd_last_error()) == 0) return 16;

    printf("ok\n");
    return failures;
}
