var report = require('./report');
console.log(report.describe(2));
