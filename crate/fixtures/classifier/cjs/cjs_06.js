// define(['x'], function () {}) appears only in this comment
module.exports = 42;
