// Minimal harness shared by the test binaries: counts failures, prints one
// [FAIL] line with file:line per failed condition, and a final [OK]/[FAILED]
// summary whose exit status ctest consumes.
#pragma once

#include <cmath>
#include <cstdio>

struct TestContext {
    int fails = 0;

    void check(bool ok, const char* expr, const char* file, int line) {
        if (!ok) {
            ++fails;
            std::printf("[FAIL] %s:%d  CHECK(%s)\n", file, line, expr);
        }
    }

    void check_near(double a, double b, double tol, const char* expr, const char* file,
                    int line) {
        if (!(std::fabs(a - b) <= tol)) {
            ++fails;
            std::printf("[FAIL] %s:%d  CHECK_NEAR(%s)  lhs=%.12g rhs=%.12g tol=%g\n", file,
                        line, expr, a, b, tol);
        }
    }

    int done(const char* name) {
        if (fails == 0) {
            std::printf("[OK] %s\n", name);
            return 0;
        }
        std::printf("[FAILED] %s: %d failure(s)\n", name, fails);
        return 1;
    }
};

#define CHECK(ctx, expr) (ctx).check(static_cast<bool>(expr), #expr, __FILE__, __LINE__)
#define CHECK_EQ(ctx, a, b) (ctx).check((a) == (b), #a " == " #b, __FILE__, __LINE__)
#define CHECK_NEAR(ctx, a, b, tol) \
    (ctx).check_near((a), (b), (tol), #a " ~= " #b, __FILE__, __LINE__)
#define CHECK_THROWS(ctx, ExcType, stmt)                                          \
    do {                                                                          \
        bool caught_ = false;                                                     \
        try {                                                                     \
            stmt;                                                                 \
        } catch (const ExcType&) {                                                \
            caught_ = true;                                                       \
        } catch (...) {                                                           \
        }                                                                         \
        (ctx).check(caught_, "throws " #ExcType ": " #stmt, __FILE__, __LINE__);  \
    } while (0)
