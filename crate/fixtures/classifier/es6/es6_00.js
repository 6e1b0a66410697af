import fs from 'fs';
fs.readFileSync('x');
