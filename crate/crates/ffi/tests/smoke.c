#include <stdio.h>
#include "rmckit.h"

static const char *names[] = {"holds", "violated", "unknown"};

static int run(RmckSystem *sys, RmckCheckKind kind, const char *label) {
    RmckCheckOptions opts;
    RmckReport *report = NULL;
    RmckVerdict verdict;
    rmck_check_options_default(&opts);
    opts.slice_lo = 3;
    opts.slice_hi = 3;
    if (rmck_check(sys, kind, &opts, &report) != RMCK_STATUS_OK) {
        fprintf(stderr, "%s\n", rmck_last_error_message());
        return 1;
    }
    rmck_report_verdict(report, &verdict);
    printf("%s: %s\n", label, names[verdict]);
    rmck_report_free(report);
    return 0;
}

int main(int argc, char **argv) {
    RmckSystem *sys = NULL;
    if (argc < 2 || rmck_system_load(argv[1], &sys) != RMCK_STATUS_OK)
        return 1;
    if (run(sys, RMCK_CHECK_KIND_REACH, "reach") || run(sys, RMCK_CHECK_KIND_LOSP, "losp"))
        return 1;
    rmck_system_free(sys);
    printf("missing: %d\n", (int)rmck_system_load("/nonexistent.sys", &sys));
    return 0;
}
